#!/usr/bin/env python3
"""Normal-form equations of Hirzebruch surface models and their fiber degrees.

Every model with a section embeds in P^1 x P^2 with equation
x0^n y0 + x1^n y1 + f y2 = 0.  The fiber over a prime p is the Hirzebruch
surface whose degree is the splitting type of the associated bundle mod p,
so integer coefficients of f control where the degree jumps.
"""

from arithsurf import NormalForm, constancy_check, degree_profile, equation


def show(n, f):
    nf = NormalForm.make(n, f)
    rec = equation(nf)
    prof = degree_profile(nf)
    print(rec["equation"])
    print(f"  generic degree: {prof.generic.type}")
    for p, st in prof.jumps:
        print(f"  degree over F_{p}: {st.type}")
    print()


def main():
    print("small normal forms and their degree profiles\n")
    show(0, "0")
    show(1, "0")
    show(2, "0")
    show(2, "x0*x1")
    show(2, "5*x0*x1")
    show(2, "6*x0*x1")
    show(3, "30*x0^2*x1")

    print("a constant profile certifies the split model:")
    res = constancy_check(NormalForm.make(1, "0"))
    print(f"  n=1, f=0: {res.status}, split type {res.certificate.split.to_json()}")
    res = constancy_check(NormalForm.make(2, "5*x0*x1"))
    print(f"  n=2, f=5*x0*x1: {res.status} (degree jumps at 5)")


if __name__ == "__main__":
    main()
