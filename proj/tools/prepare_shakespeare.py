#!/usr/bin/env python3
# Copyright 2026 The ngs Authors
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
"""Builds data/shakespeare.tar.gz from the Project Gutenberg plays.

The source texts ship in the `shakespeare` sdist on PyPI
(shksprdata/texts/*_gut.txt, public domain). Output is one sentence per
line with punctuation split into separate tokens.

    pip download --no-deps shakespeare==0.6
    python3 tools/prepare_shakespeare.py shakespeare-0.6.tar.gz data/
"""

import argparse
import io
import re
import sys
import tarfile

TOKEN = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)*|\d+|[^\sA-Za-z\d]")
END = {".", "!", "?"}


def sentences(text):
    current = []
    for line in text.splitlines():
        for tok in TOKEN.findall(line):
            current.append(tok)
            if tok in END:
                yield current
                current = []
    if current:
        yield current


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("sdist")
    ap.add_argument("outdir")
    args = ap.parse_args()

    lines = []
    with tarfile.open(args.sdist) as tar:
        members = sorted(
            (m for m in tar.getmembers() if m.name.endswith("_gut.txt")),
            key=lambda m: m.name)
        for m in members:
            raw = tar.extractfile(m).read().decode("latin-1")
            for s in sentences(raw):
                lines.append(" ".join(s))

    body = ("\n".join(lines) + "\n").encode("utf-8")
    tokens = sum(len(l.split()) for l in lines)
    info = tarfile.TarInfo("shakespeare.txt")
    info.size = len(body)
    info.mtime = 0
    with tarfile.open(f"{args.outdir}/shakespeare.tar.gz", "w:gz") as out:
        out.addfile(info, io.BytesIO(body))
    print(f"{len(members)} files, {len(lines)} sentences, {tokens} tokens",
          file=sys.stderr)


if __name__ == "__main__":
    main()
