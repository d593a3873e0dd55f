"""Brute-force reference computations on plain dicts.

Nothing here goes through multival's algorithms; maps are only read back as
``{u: x}`` tables.
"""
import itertools


def table(f):
    return dict(zip(f.domain.elements, f.values))


def all_functions(domain, codomain):
    """Every total function as a dict, in lexicographic order of value tuples."""
    for values in itertools.product(list(codomain), repeat=len(domain)):
        yield dict(zip(domain, values))


def immanent_by_pairs(T, M, N):
    """Immanent iff no two inputs agree under M but differ under N∘T."""
    t, m, n = table(T), table(M), table(N)
    us = list(M.domain)
    return all(
        n[t[a]] == n[t[b]] for a in us for b in us if m[a] == m[b]
    )


def min_disagreement(M, T, N):
    t, m, n = table(T), table(M), table(N)
    best = None
    for s in all_functions(list(M.codomain), list(N.codomain)):
        d = sum(1 for u in M.domain if s[m[u]] != n[t[u]])
        best = d if best is None else min(best, d)
    return best


def solutions_brute(S, M, N):
    s, m, n = table(S), table(M), table(N)
    out = []
    for t in all_functions(list(M.domain), list(N.domain)):
        if all(n[t[u]] == s[m[u]] for u in M.domain):
            out.append(tuple(t[u] for u in M.domain))
    return out
