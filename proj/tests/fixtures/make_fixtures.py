#!/usr/bin/env python3
"""Regenerates the checked-in byte fixtures. Uses only the Python stdlib so
the files are produced independently of the C++ writers."""
import json
import struct

PLY_HEADER = (
    "ply\nformat binary_little_endian 1.0\nelement vertex 3\n"
    "property float x\nproperty float y\nproperty float z\n"
    "property uchar red\nproperty uchar green\nproperty uchar blue\n"
    "element face 1\nproperty list uchar uint vertex_indices\nend_header\n"
)
VERTS = [((0.0, 0.0, 0.0), (255, 0, 0)), ((1.0, 0.0, 0.0), (0, 255, 0)), ((0.0, 1.0, 0.0), (0, 0, 255))]


def main():
    body = b"".join(struct.pack("<fffBBB", *p, *c) for p, c in VERTS) + struct.pack("<BIII", 3, 0, 1, 2)
    with open("one_triangle.ply", "wb") as f:
        f.write(PLY_HEADER.encode() + body)
    with open("one_triangle_ascii.ply", "w") as f:
        f.write(
            "ply\nformat ascii 1.0\ncomment written by hand\nelement vertex 3\n"
            "property float x\nproperty float y\nproperty float z\n"
            "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
            "0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"
        )

    d = 4
    e = lambda i: [1.0 if k == i else 0.0 for k in range(d)]
    doc = {
        "image_input": [e(0), e(1), e(2)],
        "image_edited": [e(0), e(1), e(2)],
        "text_input": e(0),
        "text_edited": e(0),
        "text_word": e(3),
        "text_generic": e(0),
    }
    with open("identity_embeddings.json", "w") as f:
        json.dump(doc, f, indent=1)

    # Valid header declaring a 64 TiB payload, with no payload behind it.
    with open("hostile_huge.vxg", "wb") as f:
        f.write(b"VXGF" + struct.pack("<III", 1, 65536, 64) + b"\0\0\0\0")
    # A^3 * F * 4 overflows 64 bits.
    with open("hostile_overflow.vxg", "wb") as f:
        f.write(b"VXGF" + struct.pack("<III", 1, 0xFFFFFFFF, 0xFFFFFFFF) + b"\0\0\0\0")
    # Four billion vertices declared, one present.
    with open("hostile_ply.ply", "wb") as f:
        f.write(
            b"ply\nformat binary_little_endian 1.0\nelement vertex 4000000000\n"
            b"property float x\nproperty float y\nproperty float z\nend_header\n" + b"\0" * 12
        )


if __name__ == "__main__":
    main()
