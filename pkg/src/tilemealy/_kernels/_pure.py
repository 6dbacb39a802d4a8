"""Pure-Python kernels.  Same signatures and results as the compiled module.

Machines are flat tables: ``trans[q * k + x]`` and ``out[q * k + x]`` for a
machine with ``n`` states over ``k`` letters; state 0 is initial.
"""
from collections import deque

FOUND, NONE, BUDGET = 0, 1, 2


class CapExceeded(Exception):
    pass


def power_explore(delta, sigma, k, init, cap):
    """Reachable part of the power machine started at state word ``init``."""
    init = tuple(init)
    index = {init: 0}
    words = [init]
    trans, out = [], []
    q = 0
    while q < len(words):
        word = words[q]
        for x0 in range(k):
            x = x0
            nxt = []
            for a in word:
                j = a * k + x
                nxt.append(delta[j])
                x = sigma[j]
            nxt = tuple(nxt)
            r = index.get(nxt)
            if r is None:
                if len(words) >= cap:
                    raise CapExceeded(cap)
                r = index[nxt] = len(words)
                words.append(nxt)
            trans.append(r)
            out.append(x)
        q += 1
    return trans, out, len(words)


def compose(t1, o1, n1, t2, o2, n2, k, cap):
    """Machine computing ``m2(m1(w))``, restricted to pairs reachable from (0, 0)."""
    index = {(0, 0): 0}
    pairs = [(0, 0)]
    trans, out = [], []
    q = 0
    while q < len(pairs):
        p1, p2 = pairs[q]
        for x in range(k):
            j1 = p1 * k + x
            y = o1[j1]
            j2 = p2 * k + y
            nxt = (t1[j1], t2[j2])
            r = index.get(nxt)
            if r is None:
                if len(pairs) >= cap:
                    raise CapExceeded(cap)
                r = index[nxt] = len(pairs)
                pairs.append(nxt)
            trans.append(r)
            out.append(o2[j2])
        q += 1
    return trans, out, len(pairs)


def canonical(trans, out, n, k):
    """Minimize by output-respecting partition refinement, relabel by BFS from 0."""
    ids = {}
    block = [ids.setdefault(tuple(out[q * k:(q + 1) * k]), len(ids)) for q in range(n)]
    count = len(ids)
    while True:
        ids = {}
        new = [ids.setdefault((block[q],) + tuple(block[trans[q * k + x]] for x in range(k)), len(ids))
               for q in range(n)]
        if len(ids) == count:
            break
        block, count = new, len(ids)
    # BFS relabel of the quotient machine
    rep = [-1] * count
    for q in range(n):
        if rep[block[q]] < 0:
            rep[block[q]] = q
    label = {block[0]: 0}
    order = deque([block[0]])
    ctrans, cout = [], []
    while order:
        b = order.popleft()
        q = rep[b]
        for x in range(k):
            nb = block[trans[q * k + x]]
            lab = label.get(nb)
            if lab is None:
                lab = label[nb] = len(label)
                order.append(nb)
            ctrans.append(lab)
            cout.append(out[q * k + x])
    return ctrans, cout, len(label)


def grid_search(width, height, torus, tn, ts, te, tw, ncolors, budget):
    """Chronological backtracking over a width x height grid in raster order.

    Cells are filled left to right, rows bottom to top (y grows northward).
    A node is one tentative tile placement.  Returns ``(status, grid, nodes)``
    where grid is a flat list indexed ``y * width + x`` when status is FOUND.
    """
    ntiles = len(tn)
    # candidates keyed by (west constraint, south constraint); constraint -1 = free
    cands = {}
    for w in range(-1, ncolors):
        for s in range(-1, ncolors):
            cands[w, s] = [t for t in range(ntiles)
                           if (w < 0 or tw[t] == w) and (s < 0 or ts[t] == s)]
    ncells = width * height
    grid = [-1] * ncells
    choice = [0] * ncells
    lists = [None] * ncells
    nodes = 0
    i = 0
    if ncells == 0:
        return FOUND, grid, 0
    lists[0] = cands[-1, -1]
    choice[0] = 0
    while True:
        x, y = i % width, i // width
        lst = lists[i]
        placed = False
        while choice[i] < len(lst):
            t = lst[choice[i]]
            choice[i] += 1
            nodes += 1
            if nodes > budget:
                return BUDGET, None, nodes
            if torus:
                if x == width - 1 and te[t] != tw[grid[y * width] if width > 1 else t]:
                    continue
                if y == height - 1 and tn[t] != ts[grid[x] if height > 1 else t]:
                    continue
            grid[i] = t
            placed = True
            break
        if placed:
            i += 1
            if i == ncells:
                return FOUND, grid, nodes
            x, y = i % width, i // width
            w = te[grid[i - 1]] if x > 0 else -1
            s = tn[grid[i - width]] if y > 0 else -1
            lists[i] = cands[w, s]
            choice[i] = 0
        else:
            grid[i] = -1
            i -= 1
            if i < 0:
                return NONE, None, nodes
