#!/usr/bin/env python3
"""Regenerates crates/cli/tests/data/trueskill_oracle.json.

Evaluates the two-player TrueSkill update (win, loss, draw) with mpmath
at 50 significant digits: variances are inflated by tau^2, the draw
margin comes from the inverse normal cdf of (1 + draw_probability) / 2,
and the posterior follows the closed-form v/w moment matching. The
resulting fixture is an independent high-precision reference for the
f64 implementation; expected values are stored as 25-digit decimal
strings.

Inputs are generated as Python floats and serialized with shortest
round-trip repr, so the Rust side parses bit-identical f64 inputs.
"""

import json
import random
from pathlib import Path

from mpmath import erf, erfinv, exp, mp, mpf, pi, sqrt

mp.dps = 50

OUT = (
    Path(__file__).resolve().parents[1]
    / "crates"
    / "cli"
    / "tests"
    / "data"
    / "trueskill_oracle.json"
)


def pdf(x):
    return exp(-x * x / 2) / sqrt(2 * pi)


def cdf(x):
    return (1 + erf(x / sqrt(2))) / 2


def inverse_cdf(q):
    return sqrt(2) * erfinv(2 * q - 1)


def update(case):
    mu_a, sigma_a = mpf(case["mu_a"]), mpf(case["sigma_a"])
    mu_b, sigma_b = mpf(case["mu_b"]), mpf(case["sigma_b"])
    beta, tau = mpf(case["beta"]), mpf(case["tau"])
    p_draw = mpf(case["draw_probability"])

    va = sigma_a**2 + tau**2
    vb = sigma_b**2 + tau**2
    c2 = 2 * beta**2 + va + vb
    c = sqrt(c2)
    e = inverse_cdf((1 + p_draw) / 2) * sqrt(2) * beta / c

    if case["outcome"] == "tie":
        t = (mu_a - mu_b) / c
        denom = cdf(e - t) - cdf(-e - t)
        v = (pdf(-e - t) - pdf(e - t)) / denom
        w = v * v + ((e - t) * pdf(e - t) + (e + t) * pdf(e + t)) / denom
    else:
        sign = 1 if case["outcome"] == "a_wins" else -1
        t = sign * (mu_a - mu_b) / c
        d = t - e
        v_win = pdf(d) / cdf(d)
        w = v_win * (v_win + d)
        v = sign * v_win

    return {
        "mu_a": mp.nstr(mu_a + va / c * v, 25),
        "sigma_a": mp.nstr(sqrt(va * (1 - va / c2 * w)), 25),
        "mu_b": mp.nstr(mu_b - vb / c * v, 25),
        "sigma_b": mp.nstr(sqrt(vb * (1 - vb / c2 * w)), 25),
    }


def main():
    rng = random.Random(574166)
    cases = []

    sigma0 = 25.0 / 3.0
    defaults = dict(beta=sigma0 / 2.0, tau=sigma0 / 100.0, draw_probability=0.1)
    for outcome in ("a_wins", "b_wins", "tie"):
        cases.append(
            dict(
                mu_a=25.0,
                sigma_a=sigma0,
                mu_b=25.0,
                sigma_b=sigma0,
                outcome=outcome,
                **defaults,
            )
        )
    cases.append(
        dict(
            mu_a=27.5,
            sigma_a=4.0,
            mu_b=22.0,
            sigma_b=6.5,
            outcome="a_wins",
            beta=sigma0 / 2.0,
            tau=0.0,
            draw_probability=0.1,
        )
    )
    cases.append(
        dict(
            mu_a=12.0,
            sigma_a=3.0,
            mu_b=38.0,
            sigma_b=3.0,
            outcome="a_wins",
            beta=sigma0 / 2.0,
            tau=sigma0 / 100.0,
            draw_probability=0.25,
        )
    )

    while len(cases) < 100:
        maybe_tau = rng.uniform(0.01, 0.6)
        cases.append(
            dict(
                mu_a=rng.uniform(15.0, 35.0),
                sigma_a=rng.uniform(0.8, 10.0),
                mu_b=rng.uniform(15.0, 35.0),
                sigma_b=rng.uniform(0.8, 10.0),
                beta=rng.uniform(1.5, 7.0),
                tau=rng.choice([0.0, maybe_tau]),
                draw_probability=rng.uniform(0.02, 0.35),
                outcome=rng.choice(["a_wins", "b_wins", "tie"]),
            )
        )

    for case in cases:
        case["expected"] = update(case)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "generator": "tools/gen_rating_oracle.py",
        "precision_digits": mp.dps,
        "cases": cases,
    }
    OUT.write_text(json.dumps(payload, indent=1) + "\n")
    print(f"wrote {len(cases)} cases to {OUT}")


if __name__ == "__main__":
    main()
