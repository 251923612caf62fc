"""Graded free algebras over Z[t, t^-1] and their supercommutative quotients.

Elements are stored flat, as a dict ``{(word, exponent): coefficient}`` where
``word`` is a tuple of generator ids and ``exponent`` is the power of the
central variable ``t``.  Noncommutative elements carry ``int`` coefficients;
abelian (supercommutative) elements carry ``Fraction`` coefficients and are
kept in a canonical sorted form with Koszul signs absorbed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

Word = tuple

__all__ = [
    "AlgebraError",
    "LaurentPoly",
    "GradedSignature",
    "Element",
    "DgaPresentation",
    "AlgebraMap",
    "extend_derivation",
    "extend_hom",
    "compose",
    "is_elementary",
    "invert_elementary",
    "stabilize",
    "abelianize",
    "element_to_data",
    "element_from_data",
    "dga_to_data",
    "dga_from_data",
]


class AlgebraError(ValueError):
    """Raised on signature mismatch, inhomogeneous input or malformed maps."""


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Finitely supported map ``exponent -> nonzero coefficient``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int | Fraction] | None = None):
        self._terms = {int(e): c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, coeff, exponent: int = 0) -> "LaurentPoly":
        return cls({exponent: coeff})

    def items(self):
        return sorted(self._terms.items())

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def __getitem__(self, e: int):
        return self._terms.get(e, 0)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        out: dict[int, int | Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items()):
            mono = _t_power_text(e)
            if mono == "1":
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c} {mono}"
            parts.append(body)
        return _join_signed(parts)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


def _t_power_text(e: int, latex: bool = False) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return "t"
    return f"t^{{{e}}}" if latex else f"t^{e}"


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class GradedSignature:
    """Ordered generators with integer degrees; ``t`` has degree ``t_degree``."""

    generators: tuple[str, ...]
    degrees: tuple[int, ...]
    t_degree: int = 0
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.generators) != len(self.degrees):
            raise AlgebraError("generators and degrees differ in length")
        if len(set(self.generators)) != len(self.generators):
            raise AlgebraError("generator ids must be unique")
        if self.t_degree % 2:
            raise AlgebraError("|t| = 2r(K) must be even")
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.generators)})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]], t_degree: int = 0):
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), t_degree)

    def degree(self, gen: str) -> int:
        try:
            return self.degrees[self._index[gen]]
        except KeyError:
            raise AlgebraError(f"unknown generator {gen!r}") from None

    def index(self, gen: str) -> int:
        try:
            return self._index[gen]
        except KeyError:
            raise AlgebraError(f"unknown generator {gen!r}") from None

    def __contains__(self, gen) -> bool:
        return gen in self._index

    def __len__(self):
        return len(self.generators)

    def word_degree(self, word: Word) -> int:
        idx, degs = self._index, self.degrees
        return sum(degs[idx[g]] for g in word)

    def extend(self, pairs: Iterable[tuple[str, int]]) -> "GradedSignature":
        pairs = list(pairs)
        return GradedSignature(
            self.generators + tuple(p[0] for p in pairs),
            self.degrees + tuple(p[1] for p in pairs),
            self.t_degree,
        )

    def word_key(self, word: Word):
        idx = self._index
        return (len(word), tuple(idx[g] for g in word))


def koszul_normalize(sig: GradedSignature, word: Word) -> tuple[int, Word]:
    """Sort ``word`` into signature order; return ``(sign, sorted_word)``.

    The sign is 0 when an odd generator repeats.
    """
    idx = sig._index
    degs = sig.degrees
    keys = [idx[g] for g in word]
    odd = [degs[k] % 2 for k in keys]
    sign = 1
    n = len(keys)
    for i in range(n):
        if not odd[i]:
            continue
        for j in range(i + 1, n):
            if odd[j] and keys[j] < keys[i]:
                sign = -sign
    order = sorted(range(n), key=lambda i: keys[i])
    out = tuple(word[i] for i in order)
    for i in range(1, n):
        if out[i] == out[i - 1] and degs[idx[out[i]]] % 2:
            return 0, out
    return sign, out


# ---------------------------------------------------------------------------
# Elements


class Element:
    """A finite sum of ``coeff * t^e * word`` in a graded algebra.

    ``abelian=False``: free associative algebra over Z[t, t^-1].
    ``abelian=True``: free graded supercommutative algebra over Q[t, t^-1].
    """

    __slots__ = ("sig", "abelian", "terms")

    def __init__(self, sig: GradedSignature, terms=None, abelian: bool = False, _canonical=False):
        self.sig = sig
        self.abelian = abelian
        if _canonical:
            self.terms = terms
            return
        out: dict = {}
        for (word, e), c in (terms or {}).items():
            word = tuple(word)
            for g in word:
                if g not in sig:
                    raise AlgebraError(f"generator {g!r} not in signature")
            if abelian:
                s, word = koszul_normalize(sig, word)
                c = Fraction(c) * s
            if c == 0:
                continue
            key = (word, int(e))
            out[key] = out.get(key, 0) + c
        self.terms = {k: c for k, c in out.items() if c != 0}

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, sig, abelian=False):
        return cls(sig, {}, abelian, _canonical=True)

    @classmethod
    def one(cls, sig, abelian=False):
        return cls.monomial(sig, (), 1, 0, abelian)

    @classmethod
    def gen(cls, sig, name, abelian=False):
        return cls.monomial(sig, (name,), 1, 0, abelian)

    @classmethod
    def monomial(cls, sig, word, coeff=1, exponent=0, abelian=False):
        return cls(sig, {(tuple(word), exponent): coeff}, abelian)

    @classmethod
    def t_power(cls, sig, exponent, abelian=False):
        return cls.monomial(sig, (), 1, exponent, abelian)

    # basic protocol -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Element):
            return (
                self.abelian == other.abelian
                and self.sig == other.sig
                and self.terms == other.terms
            )
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.abelian, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Word, int, int | Fraction]]:
        for (w, e), c in self.terms.items():
            yield w, e, c

    def words(self) -> list[Word]:
        return sorted({w for (w, _e) in self.terms}, key=self.sig.word_key)

    def coefficient(self, word: Word) -> LaurentPoly:
        word = tuple(word)
        return LaurentPoly({e: c for (w, e), c in self.terms.items() if w == word})

    def _check(self, other: "Element"):
        if other.sig is not self.sig and other.sig != self.sig:
            raise AlgebraError("signature mismatch")
        if other.abelian != self.abelian:
            raise AlgebraError("mode mismatch (abelian vs noncommutative)")

    def _new(self, terms):
        return Element(self.sig, terms, self.abelian, _canonical=True)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.monomial(self.sig, (), other, 0, self.abelian)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, coeff, exponent: int = 0) -> "Element":
        """Multiply by the scalar ``coeff * t^exponent``."""
        if coeff == 0:
            return self._new({})
        return self._new({(w, e + exponent): c * coeff for (w, e), c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        if self.abelian:
            sig = self.sig
            for (w1, e1), c1 in self.terms.items():
                for (w2, e2), c2 in other.terms.items():
                    s, w = koszul_normalize(sig, w1 + w2)
                    if not s:
                        continue
                    k = (w, e1 + e2)
                    out[k] = out.get(k, 0) + s * c1 * c2
        else:
            for (w1, e1), c1 in self.terms.items():
                for (w2, e2), c2 in other.terms.items():
                    k = (w1 + w2, e1 + e2)
                    out[k] = out.get(k, 0) + c1 * c2
        return self._new({k: c for k, c in out.items() if c != 0})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = Element.one(self.sig, self.abelian)
        for _ in range(n):
            out = out * self
        return out

    # grading ------------------------------------------------------------
    def term_degree(self, word: Word, exponent: int) -> int:
        return self.sig.word_degree(word) + exponent * self.sig.t_degree

    def degree(self) -> int | None:
        """Common degree of all terms; ``None`` for zero; raises if inhomogeneous."""
        degs = {self.term_degree(w, e) for (w, e) in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        try:
            self.degree()
        except AlgebraError:
            return False
        return True

    def involves(self, gen: str) -> bool:
        return any(gen in w for (w, _e) in self.terms)

    def max_word_length(self) -> int:
        return max((len(w) for (w, _e) in self.terms), default=0)

    def with_signature(self, sig: GradedSignature, rename: Mapping[str, str] | None = None):
        """Reinterpret in another signature, optionally renaming generators."""
        rename = rename or {}
        terms = {(tuple(rename.get(g, g) for g in w), e): c for (w, e), c in self.terms.items()}
        return Element(sig, terms, self.abelian)

    def to_abelian(self, sig: GradedSignature | None = None) -> "Element":
        terms = {(w, e): Fraction(c) for (w, e), c in self.terms.items()}
        return Element(sig or self.sig, terms, abelian=True)

    # output -------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Word, LaurentPoly]]:
        return [(w, self.coefficient(w)) for w in self.words()]

    def to_text(self, latex: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word, poly in self.sorted_terms():
            wtxt = _word_text(word, latex)
            if len(poly) == 1:
                (e, c), = poly.items()
                mono = _t_power_text(e, latex)
                pieces = [] if mono == "1" else [mono]
                if wtxt:
                    pieces.append(wtxt)
                body = " ".join(pieces) or "1"
                if c == 1:
                    parts.append(body)
                elif c == -1:
                    parts.append("-" + body)
                else:
                    parts.append(f"{_coeff_text(c, latex)} {body}")
            else:
                inner = _join_signed([_scalar_text(c, e, latex) for e, c in poly.items()])
                parts.append(f"({inner}) {wtxt}".rstrip())
        return _join_signed(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Element({self.to_text()})"


def _coeff_text(c, latex):
    if latex and isinstance(c, Fraction) and c.denominator != 1:
        sign = "-" if c < 0 else ""
        return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return str(c)


def _scalar_text(c, e, latex):
    mono = _t_power_text(e, latex)
    if mono == "1":
        return _coeff_text(c, latex)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_coeff_text(c, latex)} {mono}"


_NAME_RE = re.compile(r"^([A-Za-z]+)(\d+)$")


def _gen_latex(name: str) -> str:
    m = _NAME_RE.match(name)
    return f"{m.group(1)}_{m.group(2)}" if m else name


def _word_text(word: Word, latex: bool) -> str:
    if not latex:
        return " ".join(word)
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        g = _gen_latex(word[i])
        out.append(g if j - i == 1 else f"{g}^{j - i}")
        i = j
    return " ".join(out)


# ---------------------------------------------------------------------------
# Derivations and homomorphisms


def extend_derivation(
    sig: GradedSignature,
    gen_images: Mapping[str, Element],
    abelian: bool = False,
    check: bool = True,
) -> Callable[[Element], Element]:
    """Extend generator images to the degree -1 derivation with the signed Leibniz rule.

    Generators missing from ``gen_images`` are sent to 0.  ``t`` is a constant.
    """
    images = {}
    for g in sig.generators:
        img = gen_images.get(g)
        if img is None or img.is_zero():
            continue
        if check:
            d = img.degree()
            if d is not None and d != sig.degree(g) - 1:
                raise AlgebraError(
                    f"image of {g} has degree {d}, expected {sig.degree(g) - 1}"
                )
        images[g] = img.terms
    degs = {g: sig.degree(g) for g in sig.generators}
    cache: dict = {}

    def d_word(word: Word) -> dict:
        hit = cache.get(word)
        if hit is not None:
            return hit
        out: dict = {}
        prefix_deg = 0
        for i, g in enumerate(word):
            img = images.get(g)
            if img is not None:
                sign = -1 if prefix_deg % 2 else 1
                pre, post = word[:i], word[i + 1:]
                for (w, e), c in img.items():
                    k = (pre + w + post, e)
                    out[k] = out.get(k, 0) + sign * c
            prefix_deg += degs[g]
        out = {k: c for k, c in out.items() if c != 0}
        if len(cache) < 200_000:
            cache[word] = out
        return out

    def apply(x: Element) -> Element:
        if x.sig is not sig and x.sig != sig:
            raise AlgebraError("signature mismatch")
        acc: dict = {}
        for (w, e), c in x.terms.items():
            for (w2, e2), c2 in d_word(w).items():
                k = (w2, e + e2)
                acc[k] = acc.get(k, 0) + c * c2
        if x.abelian:
            return Element(sig, acc, abelian=True)
        return Element(sig, {k: c for k, c in acc.items() if c != 0}, _canonical=True)

    return apply


@dataclass(frozen=True)
class AlgebraMap:
    """Graded algebra morphism given by generator images; ``t -> t``.

    Source generators absent from ``images`` map to the same-named target
    generator (which must exist).
    """

    source: GradedSignature
    target: GradedSignature
    images: Mapping[str, Element]
    abelian: bool = False

    def image(self, gen: str) -> Element:
        img = self.images.get(gen)
        if img is not None:
            return img
        return Element.gen(self.target, gen, self.abelian)

    def check_grading(self) -> None:
        for g in self.source.generators:
            d = self.image(g).degree()
            if d is not None and d != self.source.degree(g):
                raise AlgebraError(
                    f"map does not preserve grading at {g}: {d} != {self.source.degree(g)}"
                )

    def __call__(self, x: Element) -> Element:
        return extend_hom(self)(x)


def extend_hom(f: AlgebraMap) -> Callable[[Element], Element]:
    """Multiplicative, unital, t-linear extension of ``f``."""
    imgs = {g: f.image(g) for g in f.source.generators}
    one = Element.one(f.target, f.abelian)

    def apply(x: Element) -> Element:
        if x.sig is not f.source and x.sig != f.source:
            raise AlgebraError("signature mismatch")
        out = Element.zero(f.target, f.abelian)
        for (w, e), c in x.terms.items():
            prod = one
            for g in w:
                prod = prod * imgs[g]
                if prod.is_zero():
                    break
            out = out + prod.scale(c, e)
        return out

    return apply


def compose(f: AlgebraMap, g: AlgebraMap) -> AlgebraMap:
    """``f o g`` (apply ``g`` first)."""
    if g.target != f.source:
        raise AlgebraError("maps are not composable")
    fx = extend_hom(f)
    return AlgebraMap(
        g.source, f.target, {a: fx(g.image(a)) for a in g.source.generators}, f.abelian
    )


def identity_map(sig: GradedSignature, abelian: bool = False) -> AlgebraMap:
    return AlgebraMap(sig, sig, {}, abelian)


def _correspondence(f: AlgebraMap) -> dict[str, str]:
    if len(f.source) != len(f.target):
        raise AlgebraError("elementary maps need equinumerous signatures")
    return dict(zip(f.source.generators, f.target.generators))


def elementary_data(f: AlgebraMap):
    """Return ``(j, sign, u)`` if ``f`` is elementary, else ``None``.

    Generators correspond by position.  ``j`` is ``None`` for the identity.
    """
    corr = _correspondence(f)
    moved = []
    for a in f.source.generators:
        if f.image(a) != Element.gen(f.target, corr[a], f.abelian):
            moved.append(a)
    if not moved:
        return None, 1, Element.zero(f.target, f.abelian)
    if len(moved) > 1:
        return False
    a = moved[0]
    b = corr[a]
    img = f.image(a)
    for sign in (1, -1):
        u = img - Element.gen(f.target, b, f.abelian).scale(sign)
        if not u.involves(b):
            return a, sign, u
    return False


def is_elementary(f: AlgebraMap) -> bool:
    return elementary_data(f) is not False


def invert_elementary(f: AlgebraMap) -> AlgebraMap:
    data = elementary_data(f)
    if data is False:
        raise AlgebraError("map is not elementary")
    j, sign, u = data
    back = {b: a for a, b in _correspondence(f).items()}
    if j is None:
        return AlgebraMap(f.target, f.source, {
            b: Element.gen(f.source, a, f.abelian) for b, a in back.items()
        }, f.abelian)
    u_src = u.with_signature(f.source, back)
    images = {b: Element.gen(f.source, a, f.abelian) for b, a in back.items()}
    images[_correspondence(f)[j]] = (Element.gen(f.source, j, f.abelian) - u_src).scale(sign)
    return AlgebraMap(f.target, f.source, images, f.abelian)


# ---------------------------------------------------------------------------
# DGA presentations


@dataclass
class DgaPresentation:
    """Generators with degrees and the differential on generators."""

    sig: GradedSignature
    differential: dict[str, Element]
    abelian: bool = False

    def __post_init__(self):
        for g in self.sig.generators:
            if g not in self.differential:
                self.differential[g] = Element.zero(self.sig, self.abelian)

    @property
    def generators(self):
        return self.sig.generators

    def d(self, x: Element) -> Element:
        return self.derivation(x)

    @property
    def derivation(self) -> Callable[[Element], Element]:
        op = getattr(self, "_derivation", None)
        if op is None:
            op = extend_derivation(self.sig, self.differential, self.abelian)
            object.__setattr__(self, "_derivation", op)
        return op

    def gen(self, name: str) -> Element:
        return Element.gen(self.sig, name, self.abelian)

    def element(self, terms) -> Element:
        return Element(self.sig, terms, self.abelian)

    def degree_defects(self) -> dict[str, str]:
        """Generators whose differential is not homogeneous of degree |g| - 1."""
        bad = {}
        for g in self.sig.generators:
            img = self.differential[g]
            try:
                d = img.degree()
            except AlgebraError as exc:
                bad[g] = str(exc)
                continue
            if d is not None and d != self.sig.degree(g) - 1:
                bad[g] = f"degree {d} != {self.sig.degree(g) - 1}"
        return bad

    def d_squared(self) -> dict[str, Element]:
        """Nonzero values of d(d(g)) by generator."""
        d = self.derivation
        out = {}
        for g in self.sig.generators:
            v = d(self.differential[g])
            if not v.is_zero():
                out[g] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, DgaPresentation):
            return NotImplemented
        return (
            self.sig == other.sig
            and self.abelian == other.abelian
            and all(self.differential[g] == other.differential[g] for g in self.sig.generators)
        )

    def to_text(self, latex: bool = False) -> str:
        lines = []
        for g in self.sig.generators:
            name = _gen_latex(g) if latex else g
            lhs = f"\\partial {name}" if latex else f"d({g})"
            lines.append(f"{lhs} = {self.differential[g].to_text(latex)}")
        return "\n".join(lines)


def fresh_names(sig: GradedSignature, base: tuple[str, ...] = ("e1", "e2")) -> tuple[str, ...]:
    names = tuple(base)
    k = 0
    while any(n in sig for n in names):
        k += 1
        names = tuple(f"{b}_{k}" for b in base)
    return names


def stabilize(dga: DgaPresentation, degree: int, names=None) -> DgaPresentation:
    """Adjoin ``e1`` (degree ``degree``) and ``e2`` (degree ``degree - 1``) with d e1 = e2."""
    e1, e2 = names or fresh_names(dga.sig)
    sig = dga.sig.extend([(e1, degree), (e2, degree - 1)])
    diff = {g: img.with_signature(sig) for g, img in dga.differential.items()}
    diff[e1] = Element.gen(sig, e2, dga.abelian)
    diff[e2] = Element.zero(sig, dga.abelian)
    return DgaPresentation(sig, diff, dga.abelian)


def abelianize(dga: DgaPresentation) -> DgaPresentation:
    """Pass to the supercommutative quotient over Q[t, t^-1]."""
    if dga.abelian:
        return dga
    return DgaPresentation(
        dga.sig, {g: img.to_abelian() for g, img in dga.differential.items()}, abelian=True
    )


# ---------------------------------------------------------------------------
# JSON-ready serialization


def _num_text(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def element_to_data(x: Element) -> list:
    """List of ``{"word": [...], "coeffs": {exp: "num"}}`` in canonical order."""
    out = []
    for word, poly in x.sorted_terms():
        out.append({
            "word": list(word),
            "coeffs": {str(e): _num_text(c) for e, c in poly.items()},
        })
    return out


def element_from_data(sig: GradedSignature, data, abelian: bool = False) -> Element:
    terms: dict = {}
    try:
        for entry in data:
            word = tuple(entry["word"])
            for g in word:
                if g not in sig:
                    raise AlgebraError(f"unknown generator {g!r}")
            for e, c in entry["coeffs"].items():
                q = Fraction(c)
                if not abelian and q.denominator != 1:
                    raise AlgebraError(f"non-integer coefficient {c!r}")
                terms[(word, int(e))] = terms.get((word, int(e)), 0) + (q if abelian else int(q))
    except (KeyError, TypeError, ValueError) as exc:
        raise AlgebraError(f"malformed element data: {exc}") from exc
    return Element(sig, {k: c for k, c in terms.items() if c != 0}, abelian)


def dga_to_data(dga: DgaPresentation) -> dict:
    return {
        "mode": "abelian" if dga.abelian else "free",
        "t_degree": dga.sig.t_degree,
        "generators": [{"id": g, "degree": dga.sig.degree(g)} for g in dga.sig.generators],
        "differential": {g: element_to_data(dga.differential[g]) for g in dga.sig.generators},
    }


def dga_from_data(doc: Mapping, check: bool = True) -> DgaPresentation:
    """Inverse of :func:`dga_to_data`; rejects inhomogeneous or mis-graded data."""
    try:
        mode = doc.get("mode", "free")
        if mode not in ("free", "abelian"):
            raise AlgebraError(f"unknown mode {mode!r}")
        gens = []
        for entry in doc["generators"]:
            deg = entry["degree"]
            if not isinstance(deg, int) or isinstance(deg, bool):
                raise AlgebraError(f"degree of {entry.get('id')!r} is not an integer")
            gens.append((str(entry["id"]), deg))
        t_degree = doc["t_degree"]
        if not isinstance(t_degree, int) or isinstance(t_degree, bool):
            raise AlgebraError("t_degree is not an integer")
        sig = GradedSignature.from_pairs(gens, t_degree)
        abelian = mode == "abelian"
        diff = {}
        for g, data in doc.get("differential", {}).items():
            if g not in sig:
                raise AlgebraError(f"differential given for unknown generator {g!r}")
            diff[g] = element_from_data(sig, data, abelian)
    except (KeyError, TypeError, AttributeError) as exc:
        raise AlgebraError(f"malformed DGA data: {exc}") from exc
    dga = DgaPresentation(sig, diff, abelian)
    if check:
        bad = dga.degree_defects()
        if bad:
            g = next(iter(bad))
            raise AlgebraError(f"differential of {g} has wrong degree: {bad[g]}")
    return dga
