#!/usr/bin/env python3
# Copyright 2026 The canon Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the binary test fixtures with tools independent of the C++ code.

Archives come from Python's zipfile, tarfile and gzip modules. Classfiles are
assembled here from a symbolic description, with a chosen constant-pool
order. Expected values are written to expected.json next to the fixtures.

Run once and commit the output:  python3 make_fixtures.py
"""

import calendar
import gzip
import hashlib
import io
import json
import os
import random
import struct
import tarfile
import zipfile

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = HERE


def write(name, data):
    with open(os.path.join(OUT, name), "wb") as f:
        f.write(data)


def sha256(data):
    return hashlib.sha256(data).hexdigest()


# --------------------------------------------------------------------------
# Archives

ZIP_TIME = (2022, 4, 20, 20, 27, 32)
MANIFEST = (b"Manifest-Version: 1.0\r\n"
            b"Created-By: Maven JAR Plugin 3.3.0\r\n"
            b"Built-By: root\r\n"
            b"Build-Jdk-Spec: 11\r\n\r\n")
_RNG = random.Random(5)
BIN = bytes(_RNG.randrange(256) for _ in range(3000))


def zip_bytes(entries, comment=b"", force_zip64=False):
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as z:
        for e in entries:
            info = zipfile.ZipInfo(e["path"], date_time=e.get("time", ZIP_TIME))
            info.create_system = 3
            info.external_attr = (e.get("mode", 0o100644) << 16) | (
                0x10 if e["path"].endswith("/") else 0)
            info.compress_type = e.get("compress", zipfile.ZIP_DEFLATED)
            if force_zip64:
                with z.open(info, "w", force_zip64=True) as w:
                    w.write(e["data"])
            else:
                z.writestr(info, e["data"])
        z.comment = comment
    return buf.getvalue()


def sample_entries(a_time=ZIP_TIME, built_by=b"root"):
    return [
        {"path": "META-INF/MANIFEST.MF",
         "data": MANIFEST.replace(b"Built-By: root", b"Built-By: " + built_by)},
        {"path": "a.txt", "data": b"alpha\nbeta\n", "time": a_time,
         "compress": zipfile.ZIP_STORED},
        {"path": "dir/", "data": b"", "mode": 0o40755,
         "compress": zipfile.ZIP_STORED},
        {"path": "dir/b.bin", "data": BIN},
        {"path": "bin/run.sh", "data": b"#!/bin/sh\necho run\n",
         "mode": 0o100755},
    ]


def describe_zip(entries):
    out = []
    for e in entries:
        out.append({
            "path": e["path"],
            "size": len(e["data"]),
            "sha256": sha256(e["data"]),
            "mtime": calendar.timegm(tuple(e.get("time", ZIP_TIME)) + (0, 0, 0)),
            "mode": e.get("mode", 0o100644) & 0o7777,
            "is_directory": e["path"].endswith("/"),
            "deflate": e.get("compress", zipfile.ZIP_DEFLATED)
            == zipfile.ZIP_DEFLATED,
        })
    return out


TAR_MTIME = 1650486452
LONG_PATH = "demo-1.0.0/" + "/".join(["deeply-nested-directory"] * 6) + "/file.txt"


def tar_bytes(owner="root", uid=0):
    buf = io.BytesIO()
    with tarfile.open(fileobj=buf, mode="w", format=tarfile.PAX_FORMAT) as t:
        def add(name, data=b"", kind=tarfile.REGTYPE, mode=0o644, link=""):
            info = tarfile.TarInfo(name)
            info.type = kind
            info.mode = mode
            info.mtime = TAR_MTIME
            info.uname = owner
            info.gname = owner
            info.uid = uid
            info.gid = uid
            info.linkname = link
            info.size = len(data)
            t.addfile(info, io.BytesIO(data) if data else None)
        add("demo-1.0.0", kind=tarfile.DIRTYPE, mode=0o755)
        add("demo-1.0.0/README.txt", b"Demo distribution.\n")
        add("demo-1.0.0/bin/demo.sh", b"#!/bin/sh\nexec java -jar demo.jar\n",
            mode=0o755)
        add("demo-1.0.0/latest", kind=tarfile.SYMTYPE, mode=0o777,
            link="README.txt")
        add(LONG_PATH, b"long path entry\n")
    return buf.getvalue()


def gzip_bytes(payload, mtime, name):
    buf = io.BytesIO()
    with gzip.GzipFile(filename=name, mode="wb", fileobj=buf, mtime=mtime) as g:
        g.write(payload)
    return buf.getvalue()


# --------------------------------------------------------------------------
# Classfiles

OPS = {
    "nop": 0x00, "iconst_m1": 0x02, "iconst_0": 0x03, "iconst_1": 0x04,
    "iconst_2": 0x05, "iconst_3": 0x06, "bipush": 0x10, "ldc": 0x12,
    "ldc_w": 0x13, "ldc2_w": 0x14, "iload": 0x15, "iload_0": 0x1a,
    "iload_1": 0x1b, "iload_2": 0x1c, "lload_0": 0x1e, "aload_0": 0x2a,
    "aload_1": 0x2b, "istore_1": 0x3c, "istore_2": 0x3d, "astore_2": 0x4d,
    "pop": 0x57, "dup": 0x59, "iadd": 0x60, "ladd": 0x61, "idiv": 0x6c,
    "iinc": 0x84, "if_icmpgt": 0xa3, "goto": 0xa7, "ireturn": 0xac,
    "lreturn": 0xad, "areturn": 0xb0, "return": 0xb1, "getstatic": 0xb2,
    "putstatic": 0xb3, "getfield": 0xb4, "putfield": 0xb5,
    "invokevirtual": 0xb6, "invokespecial": 0xb7, "invokestatic": 0xb8,
    "new": 0xbb, "athrow": 0xbf,
}


def children(key):
    kind = key[0]
    if kind == "Class":
        return [("Utf8", key[1])]
    if kind == "String":
        return [("Utf8", key[1])]
    if kind in ("Fieldref", "Methodref"):
        return [("Class", key[1]), ("NameAndType", key[2], key[3])]
    if kind == "NameAndType":
        return [("Utf8", key[1]), ("Utf8", key[2])]
    return []


class ClassAsm:
    """Symbolic class; pool indices are assigned by layout()."""

    def __init__(self, name, super_name="java/lang/Object", major=49):
        self.name = name
        self.super_name = super_name
        self.major = major
        self.fields = []   # (flags, name, desc, [attrs])
        self.methods = []  # (flags, name, desc, code or None, [attrs])
        self.attrs = []    # (name, body-items)
        self.keys = []

    def use(self, key):
        if key not in self.keys:
            self.keys.append(key)
            for c in children(key):
                self.use(c)
        return key

    def collect(self):
        self.keys = []
        self.use(("Class", self.name))
        self.use(("Class", self.super_name))
        for f in self.fields:
            self.use(("Utf8", f[1]))
            self.use(("Utf8", f[2]))
            for a in f[3]:
                self.collect_attr(a)
        for m in self.methods:
            self.use(("Utf8", m[1]))
            self.use(("Utf8", m[2]))
            if m[3] is not None:
                self.use(("Utf8", "Code"))
                for item in m[3]["code"]:
                    if isinstance(item, tuple) and item[0] in ("cp1", "cp2"):
                        self.use(item[1])
                for h in m[3]["handlers"]:
                    if h[3] is not None:
                        self.use(("Class", h[3]))
                for a in m[3]["attrs"]:
                    self.collect_attr(a)
            for a in m[4]:
                self.collect_attr(a)
        for a in self.attrs:
            self.collect_attr(a)

    def collect_attr(self, attr):
        self.use(("Utf8", attr[0]))
        for item in attr[1]:
            if isinstance(item, tuple) and item[0] == "cp2":
                self.use(item[1])

    def layout(self, order_seed=None):
        self.collect()
        keys = list(self.keys)
        if order_seed is not None:
            random.Random(order_seed).shuffle(keys)
        index = {}
        slot = 1
        for k in keys:
            index[k] = slot
            slot += 2 if k[0] in ("Long", "Double") else 1
        return keys, index

    def build(self, order_seed=None):
        keys, index = self.layout(order_seed)
        out = bytearray()
        out += struct.pack(">IHH", 0xCAFEBABE, 0, self.major)
        count = 1 + sum(2 if k[0] in ("Long", "Double") else 1 for k in keys)
        out += struct.pack(">H", count)
        for k in sorted(keys, key=lambda k: index[k]):
            out += self.constant(k, index)
        out += struct.pack(">HHH", 0x21, index[("Class", self.name)],
                           index[("Class", self.super_name)])
        out += struct.pack(">H", 0)  # interfaces
        out += struct.pack(">H", len(self.fields))
        for flags, name, desc, attrs in self.fields:
            out += struct.pack(">HHH", flags, index[("Utf8", name)],
                               index[("Utf8", desc)])
            out += self.attributes(attrs, index)
        out += struct.pack(">H", len(self.methods))
        for flags, name, desc, code, attrs in self.methods:
            out += struct.pack(">HHH", flags, index[("Utf8", name)],
                               index[("Utf8", desc)])
            all_attrs = []
            if code is not None:
                all_attrs.append(("Code", [("raw", self.code(code, index))]))
            all_attrs += attrs
            out += self.attributes(all_attrs, index)
        out += self.attributes(self.attrs, index)
        return bytes(out)

    @staticmethod
    def constant(k, index):
        kind = k[0]
        if kind == "Utf8":
            data = k[1].encode("utf-8")
            return struct.pack(">BH", 1, len(data)) + data
        if kind == "Integer":
            return struct.pack(">Bi", 3, k[1])
        if kind == "Long":
            return struct.pack(">Bq", 5, k[1])
        if kind == "Double":
            return struct.pack(">Bd", 6, k[1])
        if kind == "Class":
            return struct.pack(">BH", 7, index[("Utf8", k[1])])
        if kind == "String":
            return struct.pack(">BH", 8, index[("Utf8", k[1])])
        if kind in ("Fieldref", "Methodref"):
            tag = 9 if kind == "Fieldref" else 10
            return struct.pack(">BHH", tag, index[("Class", k[1])],
                               index[("NameAndType", k[2], k[3])])
        if kind == "NameAndType":
            return struct.pack(">BHH", 12, index[("Utf8", k[1])],
                               index[("Utf8", k[2])])
        raise ValueError(k)

    @staticmethod
    def items(items, index):
        out = bytearray()
        for item in items:
            if isinstance(item, tuple):
                if item[0] == "u1":
                    out += struct.pack(">B", item[1])
                elif item[0] == "u2":
                    out += struct.pack(">H", item[1])
                elif item[0] == "cp2":
                    out += struct.pack(">H", index[item[1]])
                elif item[0] == "raw":
                    out += item[1]
                else:
                    raise ValueError(item)
            else:
                out += bytes(item)
        return bytes(out)

    def attributes(self, attrs, index):
        out = bytearray(struct.pack(">H", len(attrs)))
        for name, items in attrs:
            body = self.items(items, index)
            out += struct.pack(">HI", index[("Utf8", name)], len(body)) + body
        return bytes(out)

    def code(self, method, index):
        # Two passes: label offsets, then bytes.
        code = method["code"]
        labels = {}
        pc = 0
        for item in code:
            if isinstance(item, str) and item.endswith(":"):
                labels[item[:-1]] = pc
            else:
                pc += self.width(item)
        body = bytearray()
        start = 0
        for item in code:
            if isinstance(item, str) and item.endswith(":"):
                continue
            if isinstance(item, str):
                start = len(body)
                body.append(OPS[item])
            elif item[0] == "op":
                start = len(body)
                body.append(OPS[item[1]])
            elif item[0] == "u1":
                body += struct.pack(">B", item[1] & 0xFF)
            elif item[0] == "cp1":
                body += struct.pack(">B", index[item[1]])
            elif item[0] == "cp2":
                body += struct.pack(">H", index[item[1]])
            elif item[0] == "br":
                body += struct.pack(">h", labels[item[1]] - start)
        handlers = bytearray(struct.pack(">H", len(method["handlers"])))
        for s, e, h, t in method["handlers"]:
            handlers += struct.pack(">HHHH", labels[s], labels[e], labels[h],
                                    index[("Class", t)] if t else 0)
        attrs = self.attributes(
            [(n, [self.resolve_pc(i, labels) for i in items])
             for n, items in method["attrs"]], index)
        return (struct.pack(">HHI", method["stack"], method["locals"],
                            len(body)) + bytes(body) + bytes(handlers) + attrs)

    @staticmethod
    def resolve_pc(item, labels):
        if isinstance(item, tuple) and item[0] == "pc":
            return ("u2", labels[item[1]])
        return item

    @staticmethod
    def width(item):
        if isinstance(item, str):
            return 1
        return {"op": 1, "u1": 1, "cp1": 1, "cp2": 2, "br": 2}[item[0]]

    def method(self, flags, name, desc, stack, locals_, code, handlers=(),
               code_attrs=(), attrs=()):
        m = {"stack": stack, "locals": locals_, "code": code,
             "handlers": list(handlers), "attrs": list(code_attrs)}
        self.methods.append((flags, name, desc, m, list(attrs)))


def lnt(pairs):
    items = [("u2", len(pairs))]
    for label, line in pairs:
        items += [("pc", label), ("u2", line)]
    return ("LineNumberTable", items)


def lvt(rows):
    items = [("u2", len(rows))]
    for start, end_len, name, desc, slot in rows:
        items += [("pc", start), ("u2", end_len), ("cp2", ("Utf8", name)),
                  ("cp2", ("Utf8", desc)), ("u2", slot)]
    return ("LocalVariableTable", items)


OUT_FIELD = ("Fieldref", "java/lang/System", "out", "Ljava/io/PrintStream;")


def println(desc):
    return ("Methodref", "java/io/PrintStream", "println", desc)


def calc(variant):
    """fixtures/Calc. Variants differ in member order and debug data only."""
    c = ClassAsm("fixtures/Calc")
    line = {"a": 10, "b": 40}.get(variant, 10)
    with_lvt = variant != "b"
    fields = [
        (0x0002, "total", "I", []),
        (0x0019, "NAME", "Ljava/lang/String;",
         [("ConstantValue", [("cp2", ("String", "calc"))])]),
    ]
    init = dict(flags=0x0001, name="<init>", desc="()V", stack=1, locals_=1,
                code=["L0:", "aload_0",
                      ("op", "invokespecial"),
                      ("cp2", ("Methodref", "java/lang/Object", "<init>", "()V")),
                      "return", "L1:"],
                code_attrs=[lnt([("L0", line)])] +
                ([lvt([("L0", 5, "this", "Lfixtures/Calc;", 0)])]
                 if with_lvt else []))
    total = dict(flags=0x0009, name="sum", desc="(I)I", stack=2, locals_=3,
                 code=["L0:", "iconst_0", "istore_1", "iconst_1", "istore_2",
                       "LOOP:", "iload_2", "iload_0", ("op", "if_icmpgt"),
                       ("br", "END"),
                       "iload_1", "iload_2", "iadd", "istore_1",
                       ("op", "iinc"), ("u1", 2), ("u1", 1),
                       ("op", "goto"), ("br", "LOOP"),
                       "END:", "iload_1", "ireturn", "L9:"],
                 code_attrs=[lnt([("L0", line + 3), ("LOOP", line + 4),
                                  ("END", line + 6)])])
    div = dict(flags=0x0009, name="safeDiv", desc="(II)I", stack=2, locals_=3,
               code=["S:", "iload_0", "iload_1", "idiv", "E:", "ireturn",
                     "H:", "astore_2", "iconst_m1", "ireturn"],
               handlers=[("S", "E", "H", "java/lang/ArithmeticException")],
               code_attrs=[lnt([("S", line + 9), ("H", line + 10)])])
    big = dict(flags=0x0009, name="big", desc="()J", stack=4, locals_=0,
               code=[("op", "ldc2_w"), ("cp2", ("Long", 1234567890123)),
                     ("op", "ldc2_w"), ("cp2", ("Long", 1000)), "ladd",
                     "lreturn"],
               code_attrs=[lnt([])] if False else [])
    main = dict(flags=0x0009, name="main", desc="([Ljava/lang/String;)V",
                stack=3, locals_=1,
                code=["M0:",
                      ("op", "getstatic"), ("cp2", OUT_FIELD),
                      ("op", "ldc"), ("cp1", ("String", "sum=")),
                      ("op", "invokevirtual"),
                      ("cp2", ("Methodref", "java/io/PrintStream", "print",
                               "(Ljava/lang/String;)V")),
                      ("op", "getstatic"), ("cp2", OUT_FIELD),
                      ("op", "bipush"), ("u1", 10),
                      ("op", "invokestatic"),
                      ("cp2", ("Methodref", "fixtures/Calc", "sum", "(I)I")),
                      ("op", "invokevirtual"), ("cp2", println("(I)V")),
                      ("op", "getstatic"), ("cp2", OUT_FIELD),
                      ("op", "bipush"), ("u1", 7), "iconst_0",
                      ("op", "invokestatic"),
                      ("cp2", ("Methodref", "fixtures/Calc", "safeDiv", "(II)I")),
                      ("op", "invokevirtual"), ("cp2", println("(I)V")),
                      ("op", "getstatic"), ("cp2", OUT_FIELD),
                      ("op", "ldc_w"), ("cp2", ("Integer", 100000)),
                      ("op", "invokevirtual"), ("cp2", println("(I)V")),
                      ("op", "getstatic"), ("cp2", OUT_FIELD),
                      ("op", "invokestatic"),
                      ("cp2", ("Methodref", "fixtures/Calc", "big", "()J")),
                      ("op", "invokevirtual"), ("cp2", println("(J)V")),
                      ("op", "getstatic"), ("cp2", OUT_FIELD),
                      ("op", "getstatic"),
                      ("cp2", ("Fieldref", "fixtures/Calc", "NAME",
                               "Ljava/lang/String;")),
                      ("op", "invokevirtual"),
                      ("cp2", println("(Ljava/lang/String;)V")),
                      "return"],
                code_attrs=[lnt([("M0", line + 20)])])
    methods = [init, total, div, big, main]
    if variant == "b":
        fields = list(reversed(fields))
        methods = [main, div, init, big, total]
    c.fields = fields
    for m in methods:
        c.method(**m)
    c.attrs = [("SourceFile", [("cp2", ("Utf8", "Calc.java"))])]
    return c


def unknown_attr_class():
    c = ClassAsm("fixtures/Odd")
    c.method(0x0001, "<init>", "()V", 1, 1,
             ["aload_0", ("op", "invokespecial"),
              ("cp2", ("Methodref", "java/lang/Object", "<init>", "()V")),
              "return"])
    c.attrs = [("org.example.Custom", [("u2", 7), ("u2", 1)])]
    return c


# Expected JVM output of fixtures.Calc.main.
CALC_OUTPUT = "sum=55\n-1\n100000\n1234567891123\ncalc\n"


def main():
    entries = sample_entries()
    write("sample.zip", zip_bytes(entries, comment=b"fixture archive"))
    write("sample_mtime.zip", zip_bytes(sample_entries(
        a_time=(2023, 1, 2, 3, 4, 6)), comment=b"fixture archive"))
    write("built_by_root.jar", zip_bytes(sample_entries()))
    write("built_by_aman.jar", zip_bytes(sample_entries(built_by=b"aman")))
    write("zip64.zip", zip_bytes(entries[:2], force_zip64=True))
    write("order.zip", zip_bytes([{"path": "b.txt", "data": b"b\n"},
                                  {"path": "a.txt", "data": b"a\n"}]))
    write("empty.zip", zip_bytes([]))
    tar_a = tar_bytes()
    write("sample.tar", tar_a)
    write("sample_owner.tar", tar_bytes(owner="builder", uid=1000))
    write("sample.tar.gz", gzip_bytes(tar_a, 1650486452, "sample.tar"))
    write("sample_later.tar.gz", gzip_bytes(tar_a, 1700000000, "sample.tar"))

    classes = {
        "Calc_a.class": calc("a").build(),
        "Calc_a_pool.class": calc("a").build(order_seed=11),
        "Calc_b.class": calc("b").build(order_seed=23),
        "Odd.class": unknown_attr_class().build(),
    }
    for name, data in classes.items():
        write(name, data)

    expected = {
        "zip": {"entries": describe_zip(entries),
                "comment": "fixture archive"},
        "zip_mtime_changed": "a.txt",
        "tar": {
            "long_path": LONG_PATH,
            "mtime": TAR_MTIME,
            "sha256": {"demo-1.0.0/README.txt": sha256(b"Demo distribution.\n")},
            "symlink": {"path": "demo-1.0.0/latest", "target": "README.txt"},
        },
        "gzip": {"mtime": 1650486452, "file_name": "sample.tar",
                 "payload_sha256": sha256(tar_a)},
        "classfiles": {n: sha256(d) for n, d in classes.items()},
        "calc_output": CALC_OUTPUT,
    }
    with open(os.path.join(OUT, "expected.json"), "w") as f:
        json.dump(expected, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
