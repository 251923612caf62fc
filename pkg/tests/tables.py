"""Golden differentials for the six built-in fixtures.

Each entry maps a generator to a list of (coefficient, power of t, word).
"""

from legdga.algebra import Element


def T(*terms):
    return list(terms)


UNKNOT = {
    "a": T((1, 0, ""), (1, 1, "b b")),
    "b": T((1, -1, "")),
}
UNKNOT_REV = {
    "a": T((1, -1, ""), (1, 0, "b b")),
    "b": T((1, 0, "")),
}
TREFOIL = {
    "a1": T((1, -1, ""), (1, 0, "a5 a4")),
    "a2": T((1, -1, ""), (1, 0, "a6 a5")),
    "a3": T((1, -1, ""), (1, 0, "a4 a6")),
    "a4": T(), "a5": T(), "a6": T(),
}
TREFOIL_REV = {
    "a1": T((1, 0, ""), (1, 1, "a5 a4")),
    "a2": T((1, 0, ""), (1, 1, "a6 a5")),
    "a3": T((1, 0, ""), (1, 1, "a4 a6")),
    "a4": T(), "a5": T(), "a6": T(),
}
FIG8 = {
    "a1": T((-1, 0, "a6"), (1, 0, "a6 a3"), (1, 1, "a6 a3 a5 a6")),
    "a2": T((1, -1, ""), (1, 0, "a1 a3"), (-1, 0, "a6 a3 a4")),
    "a4": T((1, 0, ""), (-1, 0, "a3"), (-1, 1, "a5 a6 a3")),
    "a7": T((1, -1, ""), (1, 0, "a3"), (-1, 1, "a3 a6 a3 a5")),
    "a3": T(), "a5": T(), "a6": T(),
}
# Reference values.  The coefficient of a6 a3 a5 a6 in d(a1) is t; d^2(a2) = 0
# with the listed d(a2), d(a4) forces t^2 instead (see FIG8_REV_CORRECTED).
FIG8_REV_REFERENCE = {
    "a1": T((1, 0, "a6"), (1, 1, "a6 a3"), (1, 1, "a6 a3 a5 a6")),
    "a2": T((1, 0, ""), (1, 1, "a1 a3"), (1, 2, "a6 a3 a4")),
    "a4": T((1, -1, ""), (1, 0, "a3"), (1, 1, "a5 a6 a3")),
    "a7": T((1, 0, ""), (-1, 0, "a3"), (-1, 2, "a3 a6 a3 a5")),
    "a3": T(), "a5": T(), "a6": T(),
}
FIG8_REV_CORRECTED = dict(FIG8_REV_REFERENCE, a1=T((1, 0, "a6"), (1, 1, "a6 a3"), (1, 2, "a6 a3 a5 a6")))

TABLES = {
    ("unknot-fig4", False): UNKNOT,
    ("unknot-fig4", True): UNKNOT_REV,
    ("trefoil-fig5", False): TREFOIL,
    ("trefoil-fig5", True): TREFOIL_REV,
    ("fig8-fig5", False): FIG8,
    ("fig8-fig5", True): FIG8_REV_CORRECTED,
}


def element(sig, terms):
    return Element(sig, {(tuple(w.split()), e): c for c, e, w in terms})


def mismatches(dga, table):
    """Generators whose differential differs from ``table``, with both sides as text."""
    out = []
    if sorted(dga.generators) != sorted(table):
        return [("generators", " ".join(dga.generators), " ".join(sorted(table)))]
    for g, terms in table.items():
        want = element(dga.sig, terms)
        got = dga.differential(g)
        if got != want:
            out.append((g, got.to_text(), want.to_text()))
    return out
