"""Inside one tightening round: the five error terms and admissibility.

A round fixes the tuple (A, B, C, D, E).  Substituting x = A into each
bound's decreasing prefactor yields the numeric coefficients; the normalized
aggregate E(A) then decides how large a shift C the bound
|psi(x) - x| < a sqrt(x) log x (log x - C) can carry, and the psi -> theta
transfer pins how small C may be.  The published states all thread that
needle -- the final one by a third of a printed ulp.
"""

from mpmath import mp, mpf

from primebounds import published
from primebounds.engine import check_admissible
from primebounds.error_terms import (
    IterationState,
    PRINTED_FIRST,
    derive_profile,
    e_terms,
    e_total,
    shift_requirement,
)

mp.pretty = True

state = IterationState(*published.STRONG_ITERATION_STATES[0])
print(f"first published state: A={state.A:.4g} B={state.B} C={state.C} D={state.D} E={state.E}")

exact = derive_profile(state)
printed = derive_profile(state, rounding=PRINTED_FIRST)
print("\ncoefficients (exact -> rounded up at printed precision):")
for name in ("coef1", "coef2", "alpha3", "coef4"):
    print(f"  {name}: {mp.nstr(getattr(exact, name), 6)} -> {mp.nstr(getattr(printed, name), 4)}")

print("\nerror terms at x = A, normalized by sqrt(x) log x:")
terms = e_terms(state.A, state, printed)
with mp.workprec(192):
    scale = mp.sqrt(mpf(state.A)) * mp.log(mpf(state.A))
    for i, term in enumerate(terms, start=1):
        print(f"  E_{i}/scale = {mp.nstr(term / scale, 6)}")
    agg = e_total(state.A, state, printed)
    print(f"aggregate E(A) = {mp.nstr(agg, 6)}  (admissible while below -C/(8 pi) = "
          f"{mp.nstr(-mpf(state.C) / (8 * mp.pi), 6)})")

print("\nadmissibility of all published states:")
for tup in published.STRONG_ITERATION_STATES:
    s = IterationState(*tup)
    rep = check_admissible(s)
    req = shift_requirement(s.A, 1 / (8 * mp.pi))
    print(
        f"  A={s.A:.4g}: C* = {mp.nstr(rep.c_star, 6)}, transfer needs >= {mp.nstr(req, 6)},"
        f" declared {s.C}: {'pass' if rep.passed else 'FAIL'}"
        f"{'' if rep.declared_c_exact else '  (declared shift exceeds C* by < one printed ulp)'}"
    )
