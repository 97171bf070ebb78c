"""Exact feasibility of small linear inequality systems.

Fourier-Motzkin elimination over the ordered field Q(psi).  Everything
here is homogeneous (no constant terms): a constraint is a coefficient
vector c with meaning c . x >= 0, or c . x > 0 when marked strict.
At rank <= 4 variables the elimination stays tiny.
"""

from __future__ import annotations

from .coeff import Coeff


def _normalize(vec, strict):
    lead = None
    for c in vec:
        if c.sign() != 0:
            lead = c
            break
    if lead is None:
        return (vec, strict)
    scale = abs(lead).inverse()
    return (tuple(c * scale for c in vec), strict)


def feasible(constraints, nvars):
    """Decide whether the homogeneous system has a solution.

    constraints: iterable of (vector, strict) with vector a tuple of Coeff.
    Returns True iff some x satisfies every c.x >= 0 (or > 0 when strict).
    x = 0 satisfies all weak constraints, so the system is trivially
    feasible when no strict constraint is present.
    """
    rows = []
    for vec, strict in constraints:
        vec = tuple(v if isinstance(v, Coeff) else Coeff(v) for v in vec)
        rows.append((vec, bool(strict)))
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for vec, strict in rows:
            s = vec[var].sign()
            if s > 0:
                pos.append((vec, strict))
            elif s < 0:
                neg.append((vec, strict))
            else:
                rest.append((vec, strict))
        combined = set()
        for pvec, pstrict in pos:
            for nvec, nstrict in neg:
                # eliminate var: nvec[var] * pvec - pvec[var] * nvec has a 0 there
                a, b = pvec[var], -nvec[var]
                new = tuple(b * p + a * q for p, q in zip(pvec, nvec))
                combined.add(_normalize(new, pstrict or nstrict))
        rows = rest + list(combined)
        # drop rows that became trivially true, detect trivially false ones
        pruned = []
        for vec, strict in rows:
            if all(c.sign() == 0 for c in vec):
                if strict:
                    return False
            else:
                pruned.append((vec, strict))
        rows = pruned
    return True


def in_rational_cone(vectors, target, nvars):
    """Is target a nonnegative rational combination of the given vectors?

    Decided through Farkas duality: target is outside the cone iff some
    linear functional is nonnegative on every generator and negative on
    the target.
    """
    constraints = [(v, False) for v in vectors]
    constraints.append((tuple(-t for t in target), True))
    return not feasible(constraints, nvars)


def strict_separation_exists(strict_neg, weak_nonneg, nvars):
    """Is there a functional psi with psi < 0 on one list and >= 0 on the other?"""
    constraints = [(tuple(-c for c in vec), True) for vec in strict_neg]
    constraints += [(vec, False) for vec in weak_nonneg]
    return feasible(constraints, nvars)
