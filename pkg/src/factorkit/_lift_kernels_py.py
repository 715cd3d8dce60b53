"""Pure-Python lifting kernels.

Same API as the compiled ``_lift_kernels`` module; used when the extension
is not built or ``FACTORKIT_PURE_PYTHON`` is set.

Relations are passed as column masks: ``cols[x]`` is the bitmask of targets
of ``x``.  Functions are passed as tables.  A square is ``f: W -> X`` on
the left, ``g: Y -> Z`` on the right, ``a: W -> Y`` on top and
``b: X -> Z`` at the bottom; fill-ins are ``h: X -> Y``.  Candidates are
ordered lexicographically by their column (or table) tuple.
"""
from __future__ import annotations

from collections import Counter
from itertools import product


def union_table(cols, n):
    """``t[S]`` is the union of ``cols[y]`` over the bits ``y`` of ``S``."""
    t = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        t[s] = t[s ^ low] | cols[low.bit_length() - 1]
    return t


def _members(f_cols, n):
    return [[x for x in range(n) if fc >> x & 1] for fc in f_cols]


def _subsets(mask):
    """Submasks of ``mask`` in increasing order."""
    out = []
    s = 0
    while True:
        out.append(s)
        if s == mask:
            return out
        s = (s - mask) & mask


def rel_solve(f_cols, g_cols, a_cols, b_cols, nX, nY):
    """First fill-in ``h`` (as column masks) or ``None``."""
    nW = len(f_cols)
    members = _members(f_cols, nX)
    for w in range(nW):
        if not members[w] and a_cols[w]:
            return None
    gt = union_table(g_cols, nY)
    full = (1 << nY) - 1
    allowed = [full] * nX
    closes = [[] for _ in range(nX)]
    for w, ms in enumerate(members):
        for x in ms:
            allowed[x] &= a_cols[w]
        if ms:
            closes[ms[-1]].append(w)
    cand = [[s for s in _subsets(allowed[x]) if gt[s] == b_cols[x]] for x in range(nX)]
    h = [0] * nX

    def dfs(x):
        if x == nX:
            return True
        for s in cand[x]:
            h[x] = s
            ok = True
            for w in closes[x]:
                acc = 0
                for xx in members[w]:
                    acc |= h[xx]
                if acc != a_cols[w]:
                    ok = False
                    break
            if ok and dfs(x + 1):
                return True
        return False

    return tuple(h) if dfs(0) else None


def rel_lift_witness(f_cols, nX, g_cols, nY, nZ):
    """First commuting square over ``f`` and ``g`` with no fill-in, or ``None``.

    Every fill-in ``h`` yields the square ``(h . f, g . h)``; the lifting
    property holds iff these exhaust the commuting squares, which is decided
    by comparing counts.
    """
    nW = len(f_cols)
    members = _members(f_cols, nX)
    gt = union_table(g_cols, nY)

    def along_f(cols):
        out = []
        for ms in members:
            acc = 0
            for x in ms:
                acc |= cols[x]
            out.append(acc)
        return tuple(out)

    seen = set()
    per_a = Counter()
    for h in product(range(1 << nY), repeat=nX):
        a = along_f(h)
        key = (a, tuple(gt[s] for s in h))
        if key not in seen:
            seen.add(key)
            per_a[a] += 1
    hist = Counter(along_f(b) for b in product(range(1 << nZ), repeat=nX))
    total = 0
    targets = {}
    for a in product(range(1 << nY), repeat=nW):
        t = tuple(gt[s] for s in a)
        targets[a] = t
        total += hist[t]
    if total == len(seen):
        return None

    full = (1 << nZ) - 1
    for a in product(range(1 << nY), repeat=nW):
        t = targets[a]
        if per_a[a] >= hist[t]:
            continue
        allowed = [full] * nX
        for w, ms in enumerate(members):
            for x in ms:
                allowed[x] &= t[w]
        for b in product(*(_subsets(m) for m in allowed)):
            if along_f(b) == t and (a, b) not in seen:
                return a, b
    raise AssertionError("count mismatch without a witness")


def fun_solve(f_tab, g_tab, a_tab, b_tab, nX, nY):
    forced = [None] * nX
    for w, x in enumerate(f_tab):
        if forced[x] is None:
            forced[x] = a_tab[w]
        elif forced[x] != a_tab[w]:
            return None
    h = []
    for x in range(nX):
        if forced[x] is not None:
            if g_tab[forced[x]] != b_tab[x]:
                return None
            h.append(forced[x])
            continue
        y = next((y for y in range(nY) if g_tab[y] == b_tab[x]), None)
        if y is None:
            return None
        h.append(y)
    return tuple(h)


def fun_lift_witness(f_tab, nX, g_tab, nY, nZ):
    nW = len(f_tab)
    seen = set()
    per_a = Counter()
    for h in product(range(nY), repeat=nX):
        a = tuple(h[x] for x in f_tab)
        key = (a, tuple(g_tab[y] for y in h))
        if key not in seen:
            seen.add(key)
            per_a[a] += 1
    hist = Counter(tuple(b[x] for x in f_tab) for b in product(range(nZ), repeat=nX))
    total = 0
    for a in product(range(nY), repeat=nW):
        total += hist[tuple(g_tab[y] for y in a)]
    if total == len(seen):
        return None

    for a in product(range(nY), repeat=nW):
        t = tuple(g_tab[y] for y in a)
        if per_a[a] >= hist[t]:
            continue
        choices = [range(nZ)] * nX
        for w, x in enumerate(f_tab):
            choices[x] = [t[w]]
        for b in product(*choices):
            if tuple(b[x] for x in f_tab) == t and (a, b) not in seen:
                return a, b
    raise AssertionError("count mismatch without a witness")
