#!/usr/bin/env python3
"""Authoring helper for the lattice files under data/lattices/.

Each Archimedean lattice is built as a doubly periodic straight-line drawing
from a small base drawing (square, triangular, or the 45-degree brick
drawing of the hexagonal lattice) whose symmetry axis is the line x = y.
Truncation, cantellation, omnitruncation, site deletion and face-centroid
duals all commute with the reflection, and coordinates are snapped to the
integer grid one coordinate at a time, so the snapped drawing keeps the
x = y axis whenever the construction had it.

The emitted files are the shipped data; the C++ loader re-validates every
invariant independently. Re-run with:  python3 tools/author_lattices.py data/lattices
"""

import math
import os
import sys
from collections import defaultdict


def canon(i, j, t):
    """Canonical key for the undirected periodic edge i -> j in cell t."""
    a = (i, j, t)
    b = (j, i, (-t[0], -t[1]))
    return min(a, b)


class PGraph:
    def __init__(self, period, pos, edges):
        self.C = period
        self.pos = [(float(x), float(y)) for x, y in pos]
        keys = set()
        for i, j, t in edges:
            t = (int(t[0]), int(t[1]))
            if i == j and t == (0, 0):
                raise ValueError("self loop")
            keys.add(canon(i, j, t))
        self.edges = sorted(keys)

    def n(self):
        return len(self.pos)

    def darts(self):
        out = []
        for i, j, t in self.edges:
            out.append((i, j, t))
            out.append((j, i, (-t[0], -t[1])))
        return out

    def vec(self, d):
        i, j, t = d
        return (self.pos[j][0] + self.C * t[0] - self.pos[i][0],
                self.pos[j][1] + self.C * t[1] - self.pos[i][1])

    def rotation(self):
        rot = defaultdict(list)
        for d in self.darts():
            rot[d[0]].append(d)
        for i in rot:
            rot[i].sort(key=lambda d: math.atan2(self.vec(d)[1], self.vec(d)[0]))
        return rot

    def faces(self):
        """Faces as lists of (vertex, offset); each face lies left of its darts."""
        rot = self.rotation()
        index = {}
        for i, lst in rot.items():
            for k, d in enumerate(lst):
                index[d] = k
        seen = set()
        faces = []
        for d0 in self.darts():
            if d0 in seen:
                continue
            face = []
            d = d0
            off = (0, 0)
            while True:
                seen.add(d)
                face.append((d[0], off))
                i, j, t = d
                off = (off[0] + t[0], off[1] + t[1])
                rev = (j, i, (-t[0], -t[1]))
                lst = rot[j]
                d = lst[(index[rev] - 1) % len(lst)]
                if d == d0:
                    if off != (0, 0):
                        raise ValueError("face does not close in the plane")
                    break
                if len(face) > 64:
                    raise ValueError("runaway face trace")
            faces.append(face)
        return faces

    def face_of_dart(self, faces):
        """Map dart -> (face index, position in face, offset of dart tail)."""
        out = {}
        for fi, face in enumerate(faces):
            k = len(face)
            for m in range(k):
                v, o = face[m]
                w, o2 = face[(m + 1) % k]
                out[(v, w, (o2[0] - o[0], o2[1] - o[1]))] = (fi, m, o)
        return out

    def centroid(self, face):
        xs = [self.pos[v][0] + self.C * o[0] for v, o in face]
        ys = [self.pos[v][1] + self.C * o[1] for v, o in face]
        return (sum(xs) / len(xs), sum(ys) / len(ys))

    def vertex_configs(self):
        faces = self.faces()
        fod = self.face_of_dart(faces)
        rot = self.rotation()
        cfg = {}
        for i, lst in rot.items():
            cfg[i] = [len(faces[fod[d][0]]) for d in lst]
        return cfg


def from_points(period, points, pairs):
    """Build a PGraph from absolute integer points and absolute point pairs."""
    C = period
    idx = {}
    pos = []
    for p in points:
        q = (p[0] % C, p[1] % C)
        if q not in idx:
            idx[q] = len(pos)
            pos.append(q)

    def locate(p):
        q = (p[0] % C, p[1] % C)
        return idx[q], ((p[0] - q[0]) // C, (p[1] - q[1]) // C)

    edges = []
    for a, b in pairs:
        ia, ca = locate(a)
        ib, cb = locate(b)
        edges.append((ia, ib, (cb[0] - ca[0], cb[1] - ca[1])))
    return PGraph(C, pos, edges)


# ---------------------------------------------------------------- base drawings

def square():
    return PGraph(1, [(0, 0)], [(0, 0, (1, 0)), (0, 0, (0, 1))])


def triangular_minus(period, removed):
    pts = [(x, y) for x in range(period) for y in range(period) if not removed(x, y)]
    pairs = []
    for x, y in pts:
        for dx, dy in ((1, 0), (0, 1), (1, 1)):
            q = (x + dx, y + dy)
            if not removed(q[0] % period, q[1] % period):
                pairs.append(((x, y), q))
    return from_points(period, pts, pairs)


def triangular():
    return triangular_minus(1, lambda x, y: False)


def hexagonal():
    # 45-degree brick drawing: vertices (1,0) and (0,1) mod 2.
    return PGraph(2, [(1, 0), (0, 1)],
                  [(0, 1, (0, 0)), (0, 1, (0, -1)), (1, 0, (-1, 0))])


def snub_square():
    # Z^2 with a diagonal in every square (i,j), i+j even: "/" when i even, "\" when i odd.
    P = 2
    pts = [(x, y) for x in range(P) for y in range(P)]
    pairs = []
    for x, y in pts:
        pairs.append(((x, y), (x + 1, y)))
        pairs.append(((x, y), (x, y + 1)))
    for i in range(P):
        for j in range(P):
            if (i + j) % 2 == 0:
                if i % 2 == 0:
                    pairs.append(((i, j), (i + 1, j + 1)))
                else:
                    pairs.append(((i + 1, j), (i, j + 1)))
    return from_points(P, pts, pairs)


def elongated_triangular():
    # Rows y: 0 even X, 1 odd X, 2 odd X, 3 even X (period 4 in y, 2 in X);
    # triangle bands between rows 0-1 and 2-3, squares between 1-2 and 3-4.
    # Mapped by (u, v) = (Y - X, Y + X) so the mirror X -> -X becomes u <-> v.
    def member(X, Y):
        r = Y % 4
        return (X % 2 == 0) if r in (0, 3) else (X % 2 == 1)

    def nbrs(X, Y):
        out = [(X + 2, Y), (X - 2, Y)]
        r = Y % 4
        if r in (0, 2):
            out += [(X + 1, Y + 1), (X - 1, Y + 1)]
        else:
            out += [(X, Y + 1)]
        if r in (1, 3):
            out += [(X + 1, Y - 1), (X - 1, Y - 1)]
        else:
            out += [(X, Y - 1)]
        return out

    P = 8
    pts = []
    pairs = []
    for u in range(P):
        for v in range(P):
            if (u + v) % 2:
                continue
            Y = (u + v) // 2
            X = (v - u) // 2
            if not member(X, Y):
                continue
            pts.append((u, v))
            for X2, Y2 in nbrs(X, Y):
                assert member(X2, Y2)
                pairs.append(((u, v), (Y2 - X2, Y2 + X2)))
    return from_points(P, pts, pairs)


def truncated_square_odd():
    # Hole-free drawing on the points with x + y odd, period 8. In rotated
    # coordinates (a, b) the squares are the 2x2 blocks of Z^2; a block links
    # to its four neighbours through alternating pinwheels (checkerboard of
    # blocks), which is mirror symmetric about a line between block columns.
    def link_vertex(i, j, side):
        a0, b0 = 2 * i, 2 * j
        if (i + j) % 2 == 0:
            table = {"R": (1, 0), "T": (1, 1), "L": (0, 1), "B": (0, 0)}
        else:
            table = {"L": (0, 0), "B": (1, 0), "R": (1, 1), "T": (0, 1)}
        da, db = table[side]
        return (a0 + da, b0 + db)

    def to_xy(p):
        a, b = p
        return (a + b + 1, b - a)

    pairs = []
    pts = set()
    for i in range(-3, 4):
        for j in range(-3, 4):
            a0, b0 = 2 * i, 2 * j
            block = [(a0, b0), (a0 + 1, b0), (a0 + 1, b0 + 1), (a0, b0 + 1)]
            for k in range(4):
                pairs.append((block[k], block[(k + 1) % 4]))
            pairs.append((link_vertex(i, j, "R"), link_vertex(i + 1, j, "L")))
            pairs.append((link_vertex(i, j, "T"), link_vertex(i, j + 1, "B")))
    P = 8
    cell = [(x, y) for x in range(P) for y in range(P) if (x + y) % 2 == 1]
    xy_pairs = [(to_xy(a), to_xy(b)) for a, b in pairs]
    # keep one representative pair per translation class
    seen = set()
    uniq = []
    for a, b in xy_pairs:
        assert abs(a[0] - b[0]) == 1 and abs(a[1] - b[1]) == 1
        key = norm_seg(a, b, P)
        if key not in seen:
            seen.add(key)
            uniq.append((a, b))
    return from_points(P, cell, uniq)


# ----------------------------------------------------------------- operations

def corner_table(G):
    """Corners of faces: key (face, position) -> (vertex, offset, in-dart, out-dart)."""
    faces = G.faces()
    corners = {}
    for fi, face in enumerate(faces):
        k = len(face)
        for m in range(k):
            v, o = face[m]
            pv, po = face[(m - 1) % k]
            nv, no = face[(m + 1) % k]
            d_in = (v, pv, (po[0] - o[0], po[1] - o[1]))
            d_out = (v, nv, (no[0] - o[0], no[1] - o[1]))
            corners[(fi, m)] = (v, o, d_in, d_out)
    return faces, corners


def truncate(G, alpha):
    darts = G.darts()
    did = {d: k for k, d in enumerate(darts)}
    pos = []
    for d in darts:
        vx, vy = G.vec(d)
        p = G.pos[d[0]]
        pos.append((p[0] + alpha * vx, p[1] + alpha * vy))
    edges = []
    rot = G.rotation()
    for i, lst in rot.items():
        for k in range(len(lst)):
            edges.append((did[lst[k]], did[lst[(k + 1) % len(lst)]], (0, 0)))
    for i, j, t in G.edges:
        edges.append((did[(i, j, t)], did[(j, i, (-t[0], -t[1]))], t))
    return PGraph(G.C, pos, edges)


def cantellate(G, alpha):
    faces, corners = corner_table(G)
    # a corner is identified by (vertex, frozenset of its two darts at cell 0)
    key_of = {}
    pos = []
    for c, (v, o, din, dout) in corners.items():
        key = (v, frozenset([din, dout]))
        if key not in key_of:
            key_of[key] = len(pos)
            a, b = G.vec(din), G.vec(dout)
            p = G.pos[v]
            pos.append((p[0] + alpha * (a[0] + b[0]) / 2, p[1] + alpha * (a[1] + b[1]) / 2))
    edges = []
    for fi, face in enumerate(faces):
        k = len(face)
        for m in range(k):
            v, o, din, dout = corners[(fi, m)]
            w, o2, din2, dout2 = corners[(fi, (m + 1) % k)]
            a = key_of[(v, frozenset([din, dout]))]
            b = key_of[(w, frozenset([din2, dout2]))]
            edges.append((a, b, dout[2]))
    rot = G.rotation()
    for v, lst in rot.items():
        k = len(lst)
        for m in range(k):
            c1 = key_of[(v, frozenset([lst[m - 1], lst[m]]))]
            c2 = key_of[(v, frozenset([lst[m], lst[(m + 1) % k]]))]
            edges.append((c1, c2, (0, 0)))
    return PGraph(G.C, pos, edges)


def omnitruncate(G, a, b):
    faces, corners = corner_table(G)
    key_of = {}
    pos = []

    def flag(v, dart, corner_darts):
        key = (v, dart, corner_darts)
        if key not in key_of:
            other = [d for d in corner_darts if d != dart][0]
            x, y = G.vec(dart), G.vec(other)
            p = G.pos[v]
            key_of[key] = len(pos)
            pos.append((p[0] + a * x[0] + b * y[0], p[1] + a * x[1] + b * y[1]))
        return key_of[key]

    edges = []
    for fi, face in enumerate(faces):
        k = len(face)
        for m in range(k):
            v, o, din, dout = corners[(fi, m)]
            cd = frozenset([din, dout])
            f_in = flag(v, din, cd)
            f_out = flag(v, dout, cd)
            edges.append((f_in, f_out, (0, 0)))
            w, o2, din2, dout2 = corners[(fi, (m + 1) % k)]
            cd2 = frozenset([din2, dout2])
            g_in = flag(w, din2, cd2)
            edges.append((f_out, g_in, dout[2]))
    rot = G.rotation()
    for v, lst in rot.items():
        k = len(lst)
        for m in range(k):
            left = frozenset([lst[m - 1], lst[m]])
            right = frozenset([lst[m], lst[(m + 1) % k]])
            edges.append((flag(v, lst[m], left), flag(v, lst[m], right), (0, 0)))
    return PGraph(G.C, pos, edges)


def bond_dual(G):
    faces = G.faces()
    fod = G.face_of_dart(faces)
    pos = [G.centroid(f) for f in faces]
    edges = []
    for i, j, t in G.edges:
        fa, _, oa = fod[(i, j, t)]
        fb, _, ob = fod[(j, i, (-t[0], -t[1]))]
        # instance of fa holding the edge: shift -oa; of fb: shift t - ob
        edges.append((fa, fb, (t[0] - ob[0] + oa[0], t[1] - ob[1] + oa[1])))
    return PGraph(G.C, pos, edges)


# ------------------------------------------------------------------ snapping

class Drawing:
    def __init__(self, C, verts, edges, faces):
        self.C = C
        self.verts = verts          # integer uncompacted positions in [0,C)^2
        self.edges = edges          # (i, j, (tx,ty))
        self.faces = faces          # lists of (vertex, offset)

    def parity(self):
        ps = {(x + y) % 2 for x, y in self.verts}
        if len(ps) == 1 and self.C % 2 == 0:
            return "even" if ps == {0} else "odd"
        return None

    def reflected(self):
        C = self.C
        idx = {}
        verts = []
        shift = []
        for x, y in self.verts:
            idx[(y, x)] = len(verts)
            verts.append((y, x))
        edges = sorted(canon(i, j, (t[1], t[0])) for i, j, t in self.edges)
        faces = [[(v, (o[1], o[0])) for v, o in reversed(f)] for f in self.faces]
        return Drawing(C, verts, edges, faces)

    def edge_set_abs(self):
        C = self.C
        out = set()
        for i, j, t in self.edges:
            a = self.verts[i]
            b = (self.verts[j][0] + C * t[0], self.verts[j][1] + C * t[1])
            out.add(tuple(sorted([a, b])))
        return out

    def symmetric(self):
        C = self.C
        mine = set()
        for a, b in self.edge_set_abs():
            mine.add(norm_seg(a, b, C))
        refl = set()
        for a, b in self.edge_set_abs():
            refl.add(norm_seg((a[1], a[0]), (b[1], b[0]), C))
        return mine == refl


def norm_seg(a, b, C):
    a, b = sorted([a, b])
    sx, sy = a[0] // C, a[1] // C
    return ((a[0] - sx * C, a[1] - sy * C), (b[0] - sx * C, b[1] - sy * C))


def snap(G, k, delta, faces=None, max_span=1):
    C = G.C * k
    raw = [(math.floor(k * x + delta + 0.5), math.floor(k * y + delta + 0.5)) for x, y in G.pos]
    cells = [(px // C, py // C) for px, py in raw]
    verts = [(px - c[0] * C, py - c[1] * C) for (px, py), c in zip(raw, cells)]
    if len(set(verts)) != len(verts):
        return None
    edges = []
    for i, j, t in G.edges:
        t2 = (t[0] + cells[j][0] - cells[i][0], t[1] + cells[j][1] - cells[i][1])
        if max(abs(t2[0]), abs(t2[1])) > 1:
            return None
        edges.append(canon(i, j, t2))
    if len(set(edges)) != len(edges):
        return None
    out_faces = []
    if faces is not None:
        for f in faces:
            nf = [(v, (o[0] + cells[v][0], o[1] + cells[v][1])) for v, o in f]
            base = nf[0][1]
            nf = [(v, (o[0] - base[0], o[1] - base[1])) for v, o in nf]
            xs = [o[0] for _, o in nf]
            ys = [o[1] for _, o in nf]
            # chords of this face must fit in neighbouring cells
            if max(xs) - min(xs) > max_span or max(ys) - min(ys) > max_span:
                return None
            out_faces.append(nf)
    return Drawing(C, verts, sorted(edges), out_faces)


def best_snap(G, with_faces, want_symmetric, kmax=24):
    faces = G.faces() if with_faces else None
    best = None
    for k in range(1, kmax + 1):
        for delta in (0.0, 0.11, 0.23, 0.37, -0.11, -0.23):
            d = snap(G, k, delta, faces)
            if d is None:
                continue
            if want_symmetric and not d.symmetric():
                continue
            score = (d.C, 0 if d.parity() else 1)
            if best is None or score < best[0]:
                best = (score, d)
        if best is not None:
            return best[1]
    raise RuntimeError("no snapping found")


# -------------------------------------------------------------------- output

def compact(d, x, y):
    return (x // 2, y) if d.parity() else (x, y)


def write_lattice(path, name, mode, d, symmetric, comment, faces=True):
    par = d.parity()
    ratio = 2 if par else 1
    lines = []
    lines.append(f"# {comment}")
    lines.append(f"name {name}")
    lines.append(f"mode {mode}")
    lines.append(f"period {d.C}")
    lines.append(f"ratio {ratio}")
    lines.append(f"parity {par if par else 'any'}")
    lines.append(f"symmetric {'true' if symmetric else 'false'}")
    for x, y in d.verts:
        cx, cy = compact(d, x, y)
        lines.append(f"vertex {cx} {cy}")
    for i, j, t in d.edges:
        a = compact(d, *d.verts[i])
        b = compact(d, *d.verts[j])
        lines.append(f"edge {a[0]} {a[1]} {b[0]} {b[1]} {t[0]} {t[1]}")
    if faces:
        for f in d.faces:
            parts = [str(len(f))]
            for v, o in f:
                c = compact(d, *d.verts[v])
                parts += [str(c[0]), str(c[1]), str(o[0]), str(o[1])]
            lines.append("face " + " ".join(parts))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def site_dual_drawing(d):
    keys = set(d.edges)
    extra = []
    for f in d.faces:
        k = len(f)
        for a in range(k):
            for b in range(a + 2, k):
                if a == 0 and b == k - 1:
                    continue
                va, oa = f[a]
                vb, ob = f[b]
                t = (ob[0] - oa[0], ob[1] - oa[1])
                if max(abs(t[0]), abs(t[1])) > 1:
                    raise RuntimeError("chord leaves neighbouring cells")
                e = canon(va, vb, t)
                if e not in keys:
                    keys.add(e)
                    extra.append(e)
    return Drawing(d.C, d.verts, sorted(keys), []), len(extra)


def check_config(G, expected):
    cfgs = G.vertex_configs()

    def normal(seq):
        rots = []
        for s in (seq, list(reversed(seq))):
            for r in range(len(s)):
                rots.append(tuple(s[r:] + s[:r]))
        return min(rots)

    want = normal(expected)
    for v, c in cfgs.items():
        if normal(c) != want:
            raise RuntimeError(f"vertex {v} has configuration {c}, expected {expected}")


LATTICES = [
    # name, builder, vertex configuration, symmetric
    ("square", square, [4, 4, 4, 4], True),
    ("triangular", triangular, [3] * 6, True),
    ("hexagonal", hexagonal, [6, 6, 6], True),
    ("kagome", lambda: triangular_minus(2, lambda x, y: x % 2 == 0 and y % 2 == 0), [3, 6, 3, 6], True),
    ("3.3.3.3.6", lambda: triangular_minus(7, lambda x, y: (x - 3 * y) % 7 == 0), [3, 3, 3, 3, 6], False),
    ("3.12.12", lambda: truncate(hexagonal(), 0.25), [3, 12, 12], True),
    ("3.4.6.4", lambda: cantellate(hexagonal(), 0.3), [3, 4, 6, 4], True),
    ("4.6.12", lambda: omnitruncate(hexagonal(), 0.3, 0.1), [4, 6, 12], True),
    ("3.3.3.4.4", elongated_triangular, [3, 3, 3, 4, 4], True),
    ("3.3.4.3.4", snub_square, [3, 3, 4, 3, 4], True),
    ("4.8.8", truncated_square_odd, [4, 8, 8], True),
]

BOND_DUALS = ["kagome", "3.3.3.3.6", "3.12.12", "3.3.3.4.4", "3.3.4.3.4", "4.8.8", "3.4.6.4", "4.6.12"]
SITE_DUALS = ["square", "hexagonal", "3.4.6.4", "3.3.3.4.4", "3.3.4.3.4", "3.3.3.3.6", "4.6.12", "4.8.8"]


def drawing_to_pgraph(d):
    return PGraph(d.C, d.verts, d.edges)


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    drawings = {}
    for name, build, config, sym in LATTICES:
        G = build()
        check_config(G, config)
        d = best_snap(G, True, sym)
        # the snapped drawing must trace the same faces
        check_config(drawing_to_pgraph(d), config)
        if d.symmetric() != sym:
            raise RuntimeError(f"{name}: symmetry {d.symmetric()} != {sym}")
        drawings[name] = (G, d, sym)
        write_lattice(os.path.join(outdir, f"{name}.lat"), name, "both", d, sym,
                      f"({','.join(map(str, config))}) lattice, grid drawing with period {d.C}")
        print(f"{name:12s} C={d.C:3d} verts={len(d.verts):3d} edges={len(d.edges):3d} "
              f"faces={len(d.faces):3d} parity={d.parity()} symmetric={sym}")
        if not sym:
            r = d.reflected()
            write_lattice(os.path.join(outdir, f"{name}-vert.lat"), f"{name}-vert", "both", r, False,
                          f"({','.join(map(str, config))}) lattice reflected in x = y (vertical rectangles)")
            drawings[name + "-vert"] = (None, r, False)

    for name in BOND_DUALS:
        G, d, sym = drawings[name]
        D = bond_dual(drawing_to_pgraph(d))
        dd = best_snap(D, False, sym)
        write_lattice(os.path.join(outdir, f"{name}-bond-dual.lat"), f"{name}-bond-dual", "bond", dd, sym,
                      f"planar dual of {name}, vertices at snapped face centroids", faces=False)
        print(f"{name + '-bond-dual':22s} C={dd.C:3d} verts={len(dd.verts):3d} edges={len(dd.edges):3d}")
        if not sym:
            r = dd.reflected()
            write_lattice(os.path.join(outdir, f"{name}-vert-bond-dual.lat"), f"{name}-vert-bond-dual", "bond",
                          r, False, f"planar dual of {name}-vert", faces=False)

    for name in SITE_DUALS:
        names = [name] + ([name + "-vert"] if not drawings[name][2] else [])
        for nm in names:
            _, d, sym = drawings[nm]
            sd, extra = site_dual_drawing(d)
            write_lattice(os.path.join(outdir, f"{nm}-site-dual.lat"), f"{nm}-site-dual", "site", sd, sym,
                          f"{nm} plus all chords of every face ({extra} chords per period)", faces=False)
            print(f"{nm + '-site-dual':22s} C={sd.C:3d} verts={len(sd.verts):3d} edges={len(sd.edges):3d} chords={extra}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/lattices")
