"""Seeded random elements for sample-based checks.

Every sample draws from its own stream ``random.Random(f"{seed}:{index}")`` so
results do not depend on how samples are split across workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor

from .poly import MultiPoly


def sample_rng(seed, index) -> random.Random:
    return random.Random(f"{seed}:{index}")


def random_poly(field, variables, names, rng, max_terms=4, max_exp=None, nonzero=True):
    """Random polynomial over ``variables`` using only ``names``; exponents bounded per name."""
    max_exp = max_exp or {}
    idx = [variables.index(n) for n in names]
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            e = [0] * len(variables)
            for n, i in zip(names, idx):
                e[i] = rng.randint(0, max_exp.get(n, 2))
            c = rng.randrange(1, field.q)
            terms[tuple(e)] = field.add(terms.get(tuple(e), 0), c)
        poly = MultiPoly(field, tuple(variables), terms)
        if poly or not nonzero:
            return poly


def default_exponents(pres):
    exps = {n: 3 for n in pres.xvars}
    exps.update(Y=2, Z=2, T=2)
    return exps


def random_element(pres, rng, names=None, max_terms=4, max_exp=None):
    """A random nonzero element of ``A`` (as an AElement)."""
    names = names or pres.vars
    max_exp = max_exp or default_exponents(pres)
    while True:
        poly = random_poly(pres.field, pres.vars, names, rng, max_terms, max_exp)
        elem = pres.element(poly)
        if not elem.is_zero():
            return elem


def parallel_map(fn, items, jobs=1):
    """Ordered map, optionally over a process pool."""
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
