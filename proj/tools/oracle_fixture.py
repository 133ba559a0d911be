# Independent brute force for the 2s x s square-lattice rectangle, s = 2.
from fractions import Fraction
from itertools import product
W, H = 4, 2
sites = [(x, y) for x in range(W) for y in range(H)]
edges = []
for (x, y) in sites:
    if x + 1 < W: edges.append(((x, y), (x + 1, y)))
    if y + 1 < H: edges.append(((x, y), (x, y + 1)))
left = lambda s: s[0] < W // 2

def components(nodes, links):
    parent = {v: v for v in nodes}
    def f(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]; v = parent[v]
        return v
    for a, b in links:
        if a in parent and b in parent: parent[f(a)] = f(b)
    comp = {}
    for v in nodes: comp.setdefault(f(v), set()).add(v)
    return list(comp.values()), f

def event(open_sites, open_edges):
    halves = []
    for side in (True, False):
        ns = [v for v in open_sites if left(v) == side]
        ls = [(a, b) for a, b in open_edges if left(a) == side and left(b) == side]
        comps, _ = components(ns, ls)
        if not comps: return False
        sizes = sorted((len(c) for c in comps), reverse=True)
        if len(sizes) > 1 and sizes[0] == sizes[1]: return False
        halves.append(max(comps, key=len))
    comps, f = components(open_sites, open_edges)
    return f(next(iter(halves[0]))) == f(next(iter(halves[1])))

def poly(mode):
    M = len(sites) if mode == 'site' else len(edges)
    c = [0] * (M + 1)
    for bits in product([0, 1], repeat=M):
        if mode == 'site':
            os_ = [s for s, b in zip(sites, bits) if b]
            oe = [(a, b) for a, b in edges if a in os_ and b in os_]
        else:
            os_ = sites
            oe = [e for e, b in zip(edges, bits) if b]
        c[sum(bits)] += event(os_, oe)
    return c

for mode in ('site', 'bond'):
    c = poly(mode); M = len(c) - 1
    p = Fraction(3, 5)
    v = sum(ck * p**k * (1 - p)**(M - k) for k, ck in enumerate(c))
    print(mode, M, ' '.join(map(str, c)), v)
