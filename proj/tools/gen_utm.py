#!/usr/bin/env python3
"""Regenerates machines/utm.tm.

The generated machine interprets any total 2-state 2-symbol machine (states
A/B plus a halt state, symbols 0/1 with 0 as blank, moves L/R) encoded on its
tape as:

    P w d n  Q w d n  R w d n  S w d n  =  q  =  <simulated tape>

where P/Q/R/S head the rule blocks for (A,0) (A,1) (B,0) (B,1); each block
holds the written digit w in {0,1}, the move d in {l,r} and the next state
n in {a,b,h}; q is the current simulated state glyph (initially a); and the
simulated tape is a string of digits with the head cell replaced by its
marked form (0 -> x, 1 -> y). The simulated head must never move left of its
leftmost cell. memsim::utm encodes and decodes this layout.

Interpreter loop per simulated step: read the state cell, scan right to the
mark to learn the scanned symbol, scan left to the matching rule block, read
(w, d, n), rewrite the state cell on the way back, replace the mark with w,
move, re-mark the arrival cell, return to the state cell. When n is h the
machine performs the final tape update and halts.
"""

import sys

DIGITS = ["0", "1"]
DIRS = ["l", "r"]
NEXTS = ["a", "b", "h"]
MARKERS = ["P", "Q", "R", "S"]  # (A,0) (A,1) (B,0) (B,1)
TABLE_GLYPHS = MARKERS + DIGITS + DIRS + NEXTS  # everything inside the rule table
MARK_OF = {"0": "x", "1": "y"}

rules = []


def rule(state, read, nstate, write, move):
    rules.append((state, read, nstate, write, move))


def scan(state, glyphs, move):
    for g in glyphs:
        rule(state, g, state, g, move)


# boot: the head starts on the first table cell; walk right to the state cell.
scan("boot", TABLE_GLYPHS, "R")
rule("boot", "=", "rdst", "=", "R")

# rdst sits on the state cell and dispatches on the simulated state.
rule("rdst", "a", "seekA", "a", "R")
rule("rdst", "b", "seekB", "b", "R")

# Find the mark to learn the scanned symbol; together with the state this
# selects one of the four rule blocks.
for st, blocks in (("seekA", ("blkP", "blkQ")), ("seekB", ("blkR", "blkS"))):
    scan(st, ["=", "0", "1"], "R")
    rule(st, "x", blocks[0], "x", "L")
    rule(st, "y", blocks[1], "y", "L")

# Walk left to the block marker. Only glyphs right of the target marker can
# be encountered on the way.
for i, marker in enumerate(MARKERS):
    st = "blk" + marker
    skip = DIGITS + ["=", "a", "b", "h", "l", "r"] + MARKERS[i + 1:]
    scan(st, skip, "L")
    rule(st, marker, "rdw", marker, "R")

# Read the block: written digit, direction, next state.
rule("rdw", "0", "rdd0", "0", "R")
rule("rdw", "1", "rdd1", "1", "R")
for w in DIGITS:
    rule("rdd" + w, "l", f"rdn{w}l", "l", "R")
    rule("rdd" + w, "r", f"rdn{w}r", "r", "R")
for w in DIGITS:
    for d in DIRS:
        for n in NEXTS:
            rule(f"rdn{w}{d}", n, f"wrst{w}{d}{n}", n, "R")

# Carry (w, d, n) right to the state cell, write n there, then head for the
# mark to perform the tape update. The h variants end in the halt state.
for w in DIGITS:
    for d in DIRS:
        for n in NEXTS:
            wrst, wst = f"wrst{w}{d}{n}", f"wst{w}{d}{n}"
            scan(wrst, TABLE_GLYPHS, "R")
            rule(wrst, "=", wst, "=", "R")
            go = f"goh{w}{d}" if n == "h" else f"go{w}{d}"
            for q in ("a", "b"):
                rule(wst, q, go, n, "R")

for w in DIGITS:
    for d in DIRS:
        for st, arr in ((f"go{w}{d}", "arr"), (f"goh{w}{d}", "arrh")):
            scan(st, ["=", "0", "1"], "R")
            move = "L" if d == "l" else "R"
            for m in ("x", "y"):
                rule(st, m, arr, w, move)

# Mark the arrival cell; fresh tape on the right reads as blank-0.
for read, mark in (("0", "x"), ("1", "y"), ("_", "x")):
    rule("arr", read, "ret", mark, "L")
    rule("arrh", read, "UHALT", mark, "S")

# Back to the state cell for the next simulated step.
scan("ret", DIGITS, "L")
rule("ret", "=", "rdst", "=", "L")


def main():
    out = sys.stdout
    out.write("# Generated by tools/gen_utm.py - do not edit by hand.\n")
    out.write("# Interprets encoded 2-state 2-symbol machines; see the generator\n")
    out.write("# for the tape layout.\n")
    out.write("machine utm\n")
    out.write("blank _\n")
    out.write("start boot\n")
    out.write("halt UHALT\n\n")
    for state, read, nstate, write, move in rules:
        out.write(f"{state} {read} -> {nstate} {write} {move}\n")


if __name__ == "__main__":
    main()
