#!/usr/bin/env python3
"""Regenerate the generator files under data/groups/.

Each almost simple group that has no built-in construction in the library is
written as a permutation group together with generators for its socle.  The
constructions used here:

  PSL(3,3).2      points + lines of PG(2,3), polarity swaps them      (26 pts)
  PSL(3,4).X      points + lines of PG(2,4); diagonal, field and
                  graph automorphisms                                  (42 pts)
  PSU(4,2).2      = PSp(4,3).2 on the 40 points of PG(3,3), extended by
                  a similitude with multiplier -1                      (40 pts)
  PSp(6,2)        on the 63 nonzero vectors of GF(2)^6                (63 pts)
  M11             standard 11-point generators                         (11 pts)
  M12.2           M12 on 12 points glued to its image under an
                  involutory outer automorphism                        (24 pts)

sympy is used only to double check group orders; the C++ loader re-verifies
everything when the files are read.

Usage: python3 tools/make_group_assets.py [output-dir]
"""

import itertools
import os
import random
import sys

from sympy.combinatorics import Permutation as SPerm
from sympy.combinatorics import PermutationGroup

RNG = random.Random(20240611)

# ---------------------------------------------------------------------------
# small fields: elements are integers; GF(4) = GF(2)[w]/(w^2+w+1), w = 2


class Field:
    def __init__(self, q):
        self.q = q
        if q in (2, 3):
            self.add = lambda a, b: (a + b) % q
            self.mul = lambda a, b: (a * b) % q
            self.neg = lambda a: (-a) % q
        elif q == 4:
            mt = [[0] * 4 for _ in range(4)]
            # 0, 1, w, w^2 = w + 1
            logs = {1: 0, 2: 1, 3: 2}
            exps = [1, 2, 3]
            for a in range(1, 4):
                for b in range(1, 4):
                    mt[a][b] = exps[(logs[a] + logs[b]) % 3]
            self.add = lambda a, b: a ^ b
            self.mul = lambda a, b: mt[a][b]
            self.neg = lambda a: a
        else:
            raise ValueError(q)
        self.inv = {a: next(b for b in range(1, q) if self.mul(a, b) == 1)
                    for a in range(1, q)}

    def frob(self, a):
        return self.mul(a, a) if self.q == 4 else a


def normalize(F, v):
    for x in v:
        if x:
            s = F.inv[x]
            return tuple(F.mul(s, y) for y in v)
    raise ValueError("zero vector")


def projective_points(F, n):
    pts = []
    for v in itertools.product(range(F.q), repeat=n):
        if any(v) and normalize(F, v) == v:
            pts.append(v)
    return pts


def vecmat(F, v, M):
    n = len(v)
    out = []
    for j in range(n):
        s = 0
        for i in range(n):
            s = F.add(s, F.mul(v[i], M[i][j]))
        out.append(s)
    return tuple(out)


def matinv(F, M):
    n = len(M)
    A = [list(M[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        r = next(r for r in range(c, n) if A[r][c])
        A[c], A[r] = A[r], A[c]
        s = F.inv[A[c][c]]
        A[c] = [F.mul(s, x) for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [F.add(x, F.neg(F.mul(f, y))) for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def transpose(M):
    return [list(r) for r in zip(*M)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def elementary(n, i, j, a):
    M = identity(n)
    M[i][j] = a
    return M


# ---------------------------------------------------------------------------
# permutations as 0-based image tuples


def perm_from_map(points, f):
    index = {p: k for k, p in enumerate(points)}
    return tuple(index[f(p)] for p in points)


def pmul(p, q):
    """p then q"""
    return tuple(q[x] for x in p)


def pinv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def porder(perms):
    return PermutationGroup([SPerm(list(p)) for p in perms]).order()


def random_element(gens, length=60):
    n = len(gens[0])
    g = tuple(range(n))
    for _ in range(length):
        g = pmul(g, RNG.choice(gens))
    return g


def two_generators(gens, order, tries=500):
    for _ in range(tries):
        a, b = random_element(gens), random_element(gens)
        if porder([a, b]) == order:
            return [a, b]
    raise RuntimeError("no generating pair found")


def image_list(p):
    return ",".join(str(x + 1) for x in p)


def write_file(path, title, lines, degree, order, gens, socle_order=None,
               socle_gens=None):
    assert porder(gens) == order, (title, porder(gens), order)
    if socle_gens is not None:
        assert porder(socle_gens) == socle_order, title
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {title}\n")
        for line in lines:
            fh.write(f"# {line}\n")
        fh.write(f"degree {degree}\n")
        fh.write(f"order {order}\n")
        if socle_gens is not None:
            fh.write(f"socle-order {socle_order}\n")
        for g in gens:
            fh.write(f"gen {image_list(g)}\n")
        for g in socle_gens or []:
            fh.write(f"socle-gen {image_list(g)}\n")
    print(f"wrote {path}: degree {degree}, order {order}")


# ---------------------------------------------------------------------------
# PSL(3,q) on points and lines


def plane_action(q):
    F = Field(q)
    pts = projective_points(F, 3)
    # a line is labelled by a normal vector w: { v : v.w = 0 }
    domain = [("p", v) for v in pts] + [("l", w) for w in pts]

    def matrix_perm(M):
        Minv_t = transpose(matinv(F, M))

        def f(x):
            kind, v = x
            if kind == "p":
                return ("p", normalize(F, vecmat(F, v, M)))
            return ("l", normalize(F, vecmat(F, v, Minv_t)))
        return perm_from_map(domain, f)

    def frobenius():
        return perm_from_map(domain, lambda x: (x[0], tuple(F.frob(c) for c in x[1])))

    def polarity():
        return perm_from_map(domain, lambda x: ("l" if x[0] == "p" else "p", x[1]))

    sl_gens = []
    for i in range(3):
        for j in range(3):
            if i != j:
                for a in range(1, q):
                    sl_gens.append(matrix_perm(elementary(3, i, j, a)))
    return F, domain, matrix_perm, frobenius, polarity, sl_gens


def make_psl33(out):
    F, domain, matrix_perm, frob, polarity, sl = plane_action(3)
    socle = two_generators(sl, 5616)
    t = polarity()
    write_file(os.path.join(out, "psl3_3_aut.gens"), "Aut(PSL(3,3)) = PSL(3,3):2",
               ["points 1..13: points of PG(2,3); 14..26: lines",
                "extra generator: polarity point <-> line (graph automorphism)"],
               len(domain), 11232, socle + [t], 5616, socle)


def make_psl34(out):
    F, domain, matrix_perm, frob, polarity, sl = plane_action(4)
    socle = two_generators(sl, 20160)
    delta = matrix_perm([[2, 0, 0], [0, 1, 0], [0, 0, 1]])  # diag(w,1,1)
    phi = frob()
    gamma = polarity()
    graph_field = pmul(phi, gamma)
    common = ["points 1..21: points of PG(2,4); 22..42: lines",
              "GF(4) = GF(2)[w]/(w^2+w+1)",
              "delta = diag(w,1,1) (diagonal), phi = Frobenius x -> x^2 (field),",
              "gamma = polarity point <-> line (graph)"]
    variants = [
        ("psl3_4_aut.gens", "Aut(PSL(3,4)) = PSL(3,4).(2 x S3)", [delta, phi, gamma], 241920,
         "outer automorphism group 2 x S3; centre generated by phi*gamma"),
        ("psl3_4.gens", "PSL(3,4) = S", [], 20160, "label S"),
        ("psl3_4_2_1.gens", "PSL(3,4).2_1", [graph_field], 40320,
         "label S.2_1: extension by phi*gamma (graph-field, central in Out)"),
        ("psl3_4_2_2.gens", "PSL(3,4).2_2", [phi], 40320,
         "label S.2_2: extension by phi (field automorphism)"),
        ("psl3_4_2_3.gens", "PSL(3,4).2_3", [gamma], 40320,
         "label S.2_3: extension by gamma (graph automorphism)"),
        ("psl3_4_2_2x2.gens", "PSL(3,4).2^2", [phi, gamma], 80640,
         "label S.2^2: extension by <phi, gamma>"),
        ("psl3_4_3.gens", "PSL(3,4).3", [delta], 60480,
         "label S.3: extension by delta"),
        ("psl3_4_6.gens", "PSL(3,4).6", [pmul(delta, graph_field)], 120960,
         "label S.6: extension by delta*phi*gamma (order 6 in Out)"),
    ]
    for name, title, extra, order, note in variants:
        write_file(os.path.join(out, name), title, common + [note], len(domain), order,
                   socle + extra, 20160, socle)


# ---------------------------------------------------------------------------
# symplectic groups


def symplectic_form(F, n):
    h = n // 2

    def B(x, y):
        s = 0
        for i in range(h):
            s = F.add(s, F.mul(x[i], y[i + h]))
            s = F.add(s, F.neg(F.mul(x[i + h], y[i])))
        return s
    return B


def transvection(F, B, v, a=1):
    def f(x):
        c = F.mul(a, B(x, v))
        return tuple(F.add(xi, F.mul(c, vi)) for xi, vi in zip(x, v))
    return f


def make_psu42(out):
    F = Field(3)
    n = 4
    B = symplectic_form(F, n)
    pts = projective_points(F, n)
    gens = [perm_from_map(pts, lambda x, f=transvection(F, B, v): normalize(F, f(x)))
            for v in pts]
    socle = two_generators(gens, 25920)
    sim = perm_from_map(pts, lambda x: normalize(F, (x[0], x[1], F.neg(x[2]), F.neg(x[3]))))
    write_file(os.path.join(out, "psu4_2_aut.gens"),
               "Aut(PSU(4,2)) = PSp(4,3):2",
               ["points 1..40: points of PG(3,3) with symplectic form x1y3+x2y4-x3y1-x4y2",
                "socle PSp(4,3) ~ PSU(4,2); extra generator diag(1,1,-1,-1) (multiplier -1)"],
               len(pts), 51840, socle + [sim], 25920, socle)


def make_psp62(out):
    F = Field(2)
    n = 6
    B = symplectic_form(F, n)
    pts = projective_points(F, n)
    gens = [perm_from_map(pts, transvection(F, B, v)) for v in pts]
    socle = two_generators(gens, 1451520)
    write_file(os.path.join(out, "psp6_2.gens"), "PSp(6,2) = Aut(PSp(6,2))",
               ["points 1..63: nonzero vectors of GF(2)^6 with symplectic form",
                "outer automorphism group trivial: ambient = socle"],
               len(pts), 1451520, socle)


# ---------------------------------------------------------------------------
# Mathieu groups


def cycles_to_perm(n, cycles):
    p = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            p[x - 1] = c[(i + 1) % len(c)] - 1
    return tuple(p)


def make_m11(out):
    a = cycles_to_perm(11, [list(range(1, 12))])
    b = cycles_to_perm(11, [[3, 7, 11, 8], [4, 10, 5, 6]])
    write_file(os.path.join(out, "m11.gens"), "M11 = Aut(M11)",
               ["outer automorphism group trivial: ambient = socle"], 11, 7920, [a, b])


def enumerate_group(gens):
    """BFS; returns dict element -> word-free parent data and element list."""
    n = len(gens[0])
    e = tuple(range(n))
    seen = {e}
    order = [e]
    for g in order:
        for s in gens:
            h = pmul(g, s)
            if h not in seen:
                seen.add(h)
                order.append(h)
    return order


def extend_hom(gens, images):
    """Return dict g -> image if gens -> images extends to an injective homomorphism."""
    n = len(gens[0])
    m = len(images[0])
    hom = {tuple(range(n)): tuple(range(m))}
    queue = [tuple(range(n))]
    for g in queue:
        hg = hom[g]
        for s, t in zip(gens, images):
            h = pmul(g, s)
            ht = pmul(hg, t)
            if h in hom:
                if hom[h] != ht:
                    return None
            else:
                hom[h] = ht
                queue.append(h)
    if len(set(hom.values())) != len(hom):
        return None
    return hom


def perm_order(p):
    seen = [False] * len(p)
    from math import lcm
    o = 1
    for i in range(len(p)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            o = lcm(o, L)
    return o


def word_signature(a, b):
    ab = pmul(a, b)
    words = [a, b, ab, pmul(ab, b), pmul(a, ab), pmul(pmul(pinv(a), pinv(b)), ab),
             pmul(ab, ab), pmul(pmul(ab, b), b), pmul(ab, pinv(b))]
    return tuple(perm_order(w) for w in words)


def fixed_points(p):
    return sum(1 for i, x in enumerate(p) if i == x)


def make_m12_aut(out):
    s = cycles_to_perm(12, [list(range(1, 12))])
    t = cycles_to_perm(12, [[3, 7, 11, 8], [4, 10, 5, 6]])
    u = cycles_to_perm(12, [[1, 12], [2, 11], [3, 6], [4, 8], [5, 9], [7, 10]])
    assert porder([s, t, u]) == 95040
    elements = enumerate_group([s, t, u])
    # a must lie in a class moved by the outer automorphism (4A/4B, 8A/8B
    # differ in their number of fixed points)
    while True:
        a, b = two_generators([s, t, u], 95040)
        if perm_order(a) in (4, 8):
            break
    sig = word_signature(a, b)
    # an automorphism not preserving fixed-point counts is outer
    cands_a = [g for g in elements if perm_order(g) == perm_order(a)
               and fixed_points(g) != fixed_points(a)]
    cands_b = [g for g in elements if perm_order(g) == perm_order(b)]
    theta0 = None
    RNG.shuffle(cands_a)
    for a2 in cands_a[:50]:
        for b2 in cands_b:
            if word_signature(a2, b2) != sig:
                continue
            hom = extend_hom([a, b], [a2, b2])
            if hom is not None:
                theta0 = hom
                break
        if theta0 is not None:
            break
    assert theta0 is not None
    assert any(fixed_points(g) != fixed_points(h) for g, h in theta0.items())
    # theta(g) = x^-1 theta0(g) x ; choose x so that theta is an involution
    ta, tb = theta0[a], theta0[b]
    theta = None
    for x in elements:
        xi = pinv(x)
        ia = pmul(pmul(xi, ta), x)
        ib = pmul(pmul(xi, tb), x)
        if pmul(pmul(xi, theta0[ia]), x) == a and pmul(pmul(xi, theta0[ib]), x) == b:
            theta = (ia, ib)
            break
    assert theta is not None

    def glue(g, h):
        return tuple(list(g) + [12 + y for y in h])
    da = glue(a, theta[0])
    db = glue(b, theta[1])
    swap = tuple(list(range(12, 24)) + list(range(12)))
    write_file(os.path.join(out, "m12_aut.gens"), "Aut(M12) = M12:2",
               ["points 1..12: natural action; 13..24: action twisted by an",
                "involutory outer automorphism; extra generator swaps the halves"],
               24, 190080, [da, db, swap], 95040, [da, db])


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "groups")
    os.makedirs(out, exist_ok=True)
    make_m11(out)
    make_psl33(out)
    make_psl34(out)
    make_psu42(out)
    make_m12_aut(out)
    make_psp62(out)


if __name__ == "__main__":
    main()
