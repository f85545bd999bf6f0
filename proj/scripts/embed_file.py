#!/usr/bin/env python3
"""Embed a text file as a C++ char array: embed_file.py IN OUT SYMBOL NAMESPACE."""

import sys


def main() -> int:
    src, dst, symbol, namespace = sys.argv[1:5]
    with open(src, "rb") as f:
        data = f.read()
    with open(dst, "w", encoding="utf-8") as out:
        out.write("// generated from %s; do not edit\n" % src.replace("\\", "/").split("/")[-1])
        out.write("namespace %s {\n" % namespace)
        out.write("extern const char %s[];\n" % symbol)
        out.write("const char %s[] = {\n" % symbol)
        for i in range(0, len(data), 20):
            chunk = data[i:i + 20]
            out.write("    " + ",".join(str(b if b < 128 else b - 256) for b in chunk) + ",\n")
        out.write("    0};\n")
        out.write("}  // namespace %s\n" % namespace)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
