#!/usr/bin/env python3
"""Convert UDHR in Unicode HTML declarations into blank-line separated paragraph files.

Usage: udhr_html_to_txt.py SRC_DIR OUT_DIR [LANG ...]

SRC_DIR holds `<code>.html` files (as shipped in the `udhr` npm package,
`declaration/`). Headings are dropped; only body paragraphs are kept. The
preamble and each article are treated as sections: when the paragraph count of
a section differs between the requested languages, that section's paragraphs
are merged into a single paragraph in every language so the output files align
positionally.
"""
import html
import re
import sys
from pathlib import Path

SECTION = re.compile(r"<(?:header|article)[^>]*>")
PARAGRAPH = re.compile(r"<p[^>]*>(.*?)</p>", re.S)
TAG = re.compile(r"<[^>]+>")
CJK = ("jpn", "cmn")


def sections(path):
    text = path.read_text(encoding="utf-8")
    out = []
    for sec in SECTION.split(text)[1:]:
        paras = []
        for m in PARAGRAPH.finditer(sec):
            p = html.unescape(TAG.sub("", m.group(1)))
            paras.append(re.sub(r"\s+", " ", p).strip())
        out.append([p for p in paras if p])
    return out


def main():
    src, dst = Path(sys.argv[1]), Path(sys.argv[2])
    langs = sys.argv[3:] or ["eng", "jpn", "cmn_hans", "cmn_hant"]
    secs = {lang: sections(src / f"{lang}.html") for lang in langs}
    counts = {len(s) for s in secs.values()}
    if len(counts) != 1:
        sys.exit(f"section counts differ: { {k: len(v) for k, v in secs.items()} }")
    units = {lang: [] for lang in langs}
    for i in range(counts.pop()):
        aligned = len({len(secs[lang][i]) for lang in langs}) == 1
        for lang in langs:
            paras = secs[lang][i]
            if aligned:
                units[lang].extend(paras)
            else:
                sep = "" if lang.startswith(CJK) else " "
                units[lang].append(sep.join(paras))
    dst.mkdir(parents=True, exist_ok=True)
    for lang in langs:
        (dst / f"{lang}.txt").write_text("\n\n".join(units[lang]) + "\n", encoding="utf-8")
        print(f"{lang}: {len(units[lang])} paragraphs")


if __name__ == "__main__":
    main()
