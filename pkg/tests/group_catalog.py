"""Finite presentations with known orders, used by several suites."""

CATALOG = {}

for n in range(1, 25):
    CATALOG[f"Z{n}"] = (f"gens: a; rels: a^{n}", n)
for n in range(2, 13):
    CATALOG[f"D{2 * n}"] = (f"gens: r, s; rels: r^{n}, s^2, s r s^-1 r", 2 * n)
for n in range(2, 7):
    CATALOG[f"Dic{4 * n}"] = (f"gens: a, x; rels: a^{2 * n}, x^2 a^-{n}, x^-1 a x a", 4 * n)
for p, q in [(2, 2), (2, 4), (2, 6), (2, 8), (3, 3), (4, 4), (2, 10), (2, 12), (3, 6)]:
    CATALOG[f"Z{p}xZ{q}"] = (f"gens: a, b; rels: a^{p}, b^{q}, a b a^-1 b^-1", p * q)
CATALOG["Z2xZ2xZ2"] = ("gens: a, b, c; rels: a^2, b^2, c^2, a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1", 8)
CATALOG["Z2xZ2xZ4"] = ("gens: a, b, c; rels: a^2, b^2, c^4, a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1", 16)
CATALOG["Z2xZ2xZ6"] = ("gens: a, b, c; rels: a^2, b^2, c^6, a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1", 24)
CATALOG["A4"] = ("gens: a, b; rels: a^2, b^3, (a b)^3", 12)
CATALOG["S4"] = ("gens: a, b; rels: a^2, b^3, (a b)^4", 24)
CATALOG["SL(2,3)"] = ("gens: s, t; rels: (s t)^2 s^-3, s^3 t^-3, s^6", 24)
CATALOG["F20"] = ("gens: a, b; rels: a^5, b^4, b^-1 a b a^-2", 20)
CATALOG["Z7:Z3"] = ("gens: a, b; rels: a^7, b^3, b^-1 a b a^-2", 21)
CATALOG["Z3:Z8"] = ("gens: a, b; rels: a^3, b^8, b^-1 a b a", 24)
CATALOG["S3xZ3"] = ("gens: r, s, c; rels: r^3, s^2, s r s^-1 r, c^3, r c r^-1 c^-1, s c s^-1 c^-1", 18)
CATALOG["Q8xZ3"] = ("gens: a, x, c; rels: a^4, x^2 a^-2, x^-1 a x a, c^3, a c a^-1 c^-1, x c x^-1 c^-1", 24)


def endomorphisms(G, T):
    """All endomorphisms of the finite group ``T`` realizing presentation ``G``,
    as full element arrays, found by trying every tuple of generator images."""
    import itertools

    from nck.fpgroups import endomorphism_from_images

    out = []
    for images in itertools.product(range(T.order), repeat=G.ngens):
        ok = True
        for rel in G.relators:
            g = T.identity
            for x in rel:
                e = images[abs(x) - 1]
                g = T.mul(g, e if x > 0 else T.inv[e])
            if g != T.identity:
                ok = False
                break
        if ok:
            out.append((images, endomorphism_from_images(T, list(images))))
    return out
