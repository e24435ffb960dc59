#!/usr/bin/env python3
"""Sweep random elements through the seven-case normalization.

Reports how often each case tag occurs, how often the published recipes
suffice on their own, and the worst residuals of the verified words.

Usage: python scripts/classify_sweep.py [--count N] [--seed S]
"""

import argparse
from collections import Counter

import numpy as np

from se3sym.algebra import AlgebraElement
from se3sym.adjoint import apply_word
from se3sym.optimal import CASE_ALLOWED, canonicalize_screw, classify_1d_paper


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    tags = Counter()
    fallbacks = 0
    worst_pattern = 0.0
    worst_word = 0.0
    worst_pitch_gap = 0.0
    for _ in range(args.count):
        element = AlgebraElement.numeric(rng.standard_normal(6))
        rep = classify_1d_paper(element)
        tags[rep.case_tag] += 1
        fallbacks += int(rep.fallback)
        allowed = CASE_ALLOWED[rep.case_tag]
        worst_pattern = max(
            worst_pattern,
            max(abs(rep.representative.coeffs[i - 1]) for i in range(1, 7) if i not in allowed),
        )
        mapped = rep.scale * apply_word(rep.word, element)
        worst_word = max(
            worst_word, float(np.abs(mapped.as_array() - rep.representative.as_array()).max())
        )
        form = canonicalize_screw(element)
        if form.kind == "screw" and rep.b:
            worst_pitch_gap = max(worst_pitch_gap, abs(1.0 / rep.b - form.pitch))

    print(f"elements                 {args.count}")
    for tag in sorted(tags):
        print(f"case {tag}               {tags[tag]}")
    print(f"geometric fallbacks      {fallbacks}")
    print(f"max disallowed coord     {worst_pattern:.3e}")
    print(f"max word residual        {worst_word:.3e}")
    print(f"max pitch disagreement   {worst_pitch_gap:.3e}")


if __name__ == "__main__":
    main()
