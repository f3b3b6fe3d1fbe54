"""Exact algebra of two-sided eventually-periodic subsets of the integers.

A SymbolicSet agrees with a periodic residue pattern far to the left and far
to the right of a finite window, inside which membership is listed
explicitly.  The class is closed under boolean operations and supports
decidable finiteness, inclusion and canonical enumeration, which is what
makes every "is this intersection finite?" question in the rest of the
package exactly answerable.

The fixed enumeration order of the integers is 0, -1, 1, -2, 2, -3, 3, ...
(`canon_rank` / `canon_unrank`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class SetFormatError(ValueError):
    """Raised for malformed raw set data or unparsable set literals."""


def canon_rank(x: int) -> int:
    """Position of x in the order 0, -1, 1, -2, 2, ...  rank(0) = 0."""
    if x == 0:
        return 0
    if x < 0:
        return -2 * x - 1
    return 2 * x


def canon_unrank(k: int) -> int:
    """Inverse of canon_rank."""
    if k < 0:
        raise ValueError("rank must be non-negative")
    if k == 0:
        return 0
    if k % 2 == 1:
        return -(k + 1) // 2
    return k // 2


def canon_iter() -> Iterator[int]:
    """All integers in canonical order."""
    k = 0
    while True:
        yield canon_unrank(k)
        k += 1


def _min_pattern_period(period: int, residues: frozenset[int]) -> int:
    for d in range(1, period + 1):
        if period % d:
            continue
        if all(((r in residues) == ((r + d) % period in residues))
               for r in range(period)):
            return d
    return period


@dataclass(frozen=True)
class SymbolicSet:
    """Canonical eventually-periodic integer set.

    Use the module constructors (``empty``, ``universe``, ``finite``,
    ``tail``, ``upto``, ``residues``) or :func:`normalize` rather than
    instantiating directly; direct construction skips canonicalization.
    """

    period: int
    lo: int
    hi: int
    explicit: frozenset[int]
    left_residues: frozenset[int]
    right_residues: frozenset[int]

    def __contains__(self, x: int) -> bool:
        if x < self.lo:
            return x % self.period in self.left_residues
        if x > self.hi:
            return x % self.period in self.right_residues
        return x in self.explicit

    # -- queries ---------------------------------------------------------

    def is_finite(self) -> bool:
        return not self.left_residues and not self.right_residues

    def cardinality(self) -> int:
        """|S| for finite sets; raises for infinite ones."""
        if not self.is_finite():
            raise ValueError("set is infinite")
        return len(self.explicit)

    def is_empty(self) -> bool:
        return self.is_finite() and not self.explicit

    def members(self) -> Iterator[int]:
        """Members in canonical order (non-terminating for infinite sets)."""
        if self.is_finite():
            yield from sorted(self.explicit, key=canon_rank)
            return
        for x in canon_iter():
            if x in self:
                yield x

    def rank_element(self, k: int) -> int:
        """The (k+1)-th member in canonical order."""
        if k < 0:
            raise ValueError("rank must be non-negative")
        if self.is_finite() and k >= len(self.explicit):
            raise IndexError(f"rank {k} out of range for set of size "
                             f"{len(self.explicit)}")
        for i, x in enumerate(self.members()):
            if i == k:
                return x
        raise AssertionError("unreachable")

    # -- algebra ---------------------------------------------------------

    def __and__(self, other: "SymbolicSet") -> "SymbolicSet":
        return _binary(self, other, lambda a, b: a and b)

    def __or__(self, other: "SymbolicSet") -> "SymbolicSet":
        return _binary(self, other, lambda a, b: a or b)

    def __sub__(self, other: "SymbolicSet") -> "SymbolicSet":
        return _binary(self, other, lambda a, b: a and not b)

    def complement(self) -> "SymbolicSet":
        return normalize(
            period=self.period, lo=self.lo, hi=self.hi,
            explicit=frozenset(x for x in range(self.lo, self.hi + 1)
                               if x not in self.explicit),
            left_residues=frozenset(r for r in range(self.period)
                                    if r not in self.left_residues),
            right_residues=frozenset(r for r in range(self.period)
                                     if r not in self.right_residues))

    def issubset(self, other: "SymbolicSet") -> bool:
        return (self - other).is_empty()

    def __le__(self, other: "SymbolicSet") -> bool:
        return self.issubset(other)


def _raw_member(x: int, period: int, lo: int, hi: int,
                explicit: frozenset[int],
                left: frozenset[int], right: frozenset[int]) -> bool:
    if x < lo:
        return x % period in left
    if x > hi:
        return x % period in right
    return x in explicit


def normalize(period: int, lo: int, hi: int,
              explicit: Iterable[int],
              left_residues: Iterable[int] = (),
              right_residues: Iterable[int] = ()) -> SymbolicSet:
    """Canonicalize raw set data; membership is preserved pointwise.

    Canonical form: the period is the least common period of both residue
    patterns, the window is as small as possible (a single row for fully
    periodic sets, placed at 0), and two pointwise-equal inputs yield
    structurally identical values.
    """
    explicit = frozenset(explicit)
    left = frozenset(left_residues)
    right = frozenset(right_residues)
    if period < 1:
        raise SetFormatError(f"period must be >= 1, got {period}")
    if lo > hi:
        raise SetFormatError(f"window [{lo}, {hi}] is empty")
    if any(x < lo or x > hi for x in explicit):
        raise SetFormatError("explicit elements outside window")
    if any(r < 0 or r >= period for r in left | right):
        raise SetFormatError("residues outside [0, period)")

    p = math.lcm(_min_pattern_period(period, left),
                 _min_pattern_period(period, right))
    left_c = frozenset(r for r in range(p) if r in left or
                       any(s % p == r for s in left))
    right_c = frozenset(r for r in range(p) if r in right or
                        any(s % p == r for s in right))

    def mem(x: int) -> bool:
        return _raw_member(x, period, lo, hi, explicit, left, right)

    # Least point violating the left pattern: everything below the window
    # follows it by definition, and one period above the window decides the
    # rest.
    lo_star = None
    for x in range(lo, hi + p + 1):
        if mem(x) != (x % p in left_c):
            lo_star = x
            break
    hi_star = None
    for x in range(hi, lo - p - 1, -1):
        if mem(x) != (x % p in right_c):
            hi_star = x
            break

    if lo_star is None:
        # Left pattern holds everywhere, so the set is fully periodic and
        # both patterns coincide.
        assert left_c == right_c and hi_star is None
        new_lo = new_hi = 0
        new_explicit = frozenset({0} if 0 % p in left_c else ())
    else:
        assert hi_star is not None
        new_lo = lo_star
        new_hi = max(hi_star, lo_star)
        new_explicit = frozenset(x for x in range(new_lo, new_hi + 1)
                                 if mem(x))
    return SymbolicSet(period=p, lo=new_lo, hi=new_hi,
                       explicit=new_explicit,
                       left_residues=left_c, right_residues=right_c)


def _binary(a: SymbolicSet, b: SymbolicSet, op) -> SymbolicSet:
    p = math.lcm(a.period, b.period)
    lo = min(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    explicit = frozenset(x for x in range(lo, hi + 1) if op(x in a, x in b))
    left = frozenset(r for r in range(p)
                     if op(r % a.period in a.left_residues,
                           r % b.period in b.left_residues))
    right = frozenset(r for r in range(p)
                      if op(r % a.period in a.right_residues,
                            r % b.period in b.right_residues))
    return normalize(p, lo, hi, explicit, left, right)


# -- constructors --------------------------------------------------------

def empty() -> SymbolicSet:
    return normalize(1, 0, 0, ())


def universe() -> SymbolicSet:
    return normalize(1, 0, 0, {0}, {0}, {0})


def finite(xs: Iterable[int]) -> SymbolicSet:
    xs = frozenset(xs)
    if not xs:
        return empty()
    return normalize(1, min(xs), max(xs), xs)


def tail(n: int) -> SymbolicSet:
    """{n, n+1, n+2, ...}"""
    return normalize(1, n, n, {n}, (), {0})


def upto(n: int) -> SymbolicSet:
    """{..., n-2, n-1, n}"""
    return normalize(1, n, n, {n}, {0}, ())


def residues(period: int, rs: Iterable[int]) -> SymbolicSet:
    """The fully periodic set {x : x mod period in rs}."""
    rs = frozenset(rs)
    return normalize(period, 0, 0, {0} if 0 in rs else (), rs, rs)


def cofinite(excluded: Iterable[int]) -> SymbolicSet:
    return universe() - finite(excluded)


def negative_evens() -> SymbolicSet:
    return residues(2, {0}) & upto(-1)


def negative_odds() -> SymbolicSet:
    return residues(2, {1}) & upto(-1)


# -- named operation aliases ---------------------------------------

def member(s: SymbolicSet, x: int) -> bool:
    return x in s


def intersect(a: SymbolicSet, b: SymbolicSet) -> SymbolicSet:
    return a & b


def union(a: SymbolicSet, b: SymbolicSet) -> SymbolicSet:
    return a | b


def difference(a: SymbolicSet, b: SymbolicSet) -> SymbolicSet:
    return a - b


def complement(a: SymbolicSet) -> SymbolicSet:
    return a.complement()


@dataclass(frozen=True)
class Classification:
    finite: bool
    cardinality: int | None = None


def classify(s: SymbolicSet) -> Classification:
    if s.is_finite():
        return Classification(finite=True, cardinality=len(s.explicit))
    return Classification(finite=False)


def is_subset(a: SymbolicSet, b: SymbolicSet) -> bool:
    return a.issubset(b)


def enumerate_rank(s: SymbolicSet, k: int) -> int:
    return s.rank_element(k)


def intersect_all(sets: Iterable[SymbolicSet]) -> SymbolicSet:
    """Intersection of finitely many sets; zero sets give the universe."""
    result = universe()
    for s in sets:
        result = result & s
    return result


# -- literal syntax ------------------------------------------------------
#
# expr     := term (('+' | '\') term)*        '+' = union, '\' = difference
# term     := 'Z' | 'tail(' INT ')' | 'upto(' INT ')'
#           | 'evens<0' | 'odds<0'
#           | 'finite{' INT (',' INT)* '}' | 'finite{}'
#           | 'mod(' INT ';' INT (',' INT)* ')'
#           | 'periodic(' INT ';' left '{' ... '}' ... ')'   (raw fallback)
#
# The printer emits the simplest matching form and falls back to the raw
# `periodic(...)` form, so parse(format(s)) == s for every set.

def _format_simple(s: SymbolicSet) -> str | None:
    if s.is_finite():
        if s.is_empty():
            return "finite{}"
        return "finite{%s}" % ",".join(str(x) for x in sorted(s.explicit))
    comp = s.complement()
    if comp.is_finite():
        if comp.is_empty():
            return "Z"
        return "Z \\ {%s}" % ",".join(str(x) for x in sorted(comp.explicit))
    for n in (s.lo, s.hi):
        if s == tail(n):
            return f"tail({n})"
        if s == upto(n):
            return f"upto({n})"
    if s == negative_evens():
        return "evens<0"
    if s == negative_odds():
        return "odds<0"
    if s == residues(s.period, s.left_residues):
        return "mod(%d;%s)" % (s.period,
                               ",".join(str(r) for r in
                                        sorted(s.left_residues)))
    return None


def format_set(s: SymbolicSet) -> str:
    simple = _format_simple(s)
    if simple is not None:
        return simple
    # Eventually-periodic core plus a finite patch and finite holes.
    core = (residues(s.period, s.left_residues) & upto(s.lo - 1)) | \
        (residues(s.period, s.right_residues) & tail(s.hi + 1))
    extra = s - core
    missing = core - s
    core_text = None if core == s else _format_simple(core)
    if core_text is not None:
        out = core_text
        if not extra.is_empty():
            out += " + finite{%s}" % ",".join(
                str(x) for x in sorted(extra.explicit))
        if not missing.is_empty():
            out += " \\ finite{%s}" % ",".join(
                str(x) for x in sorted(missing.explicit))
        return out
    return ("periodic(%d; left{%s}; window[%d,%d]{%s}; right{%s})" %
            (s.period,
             ",".join(str(r) for r in sorted(s.left_residues)),
             s.lo, s.hi,
             ",".join(str(x) for x in sorted(s.explicit)),
             ",".join(str(r) for r in sorted(s.right_residues))))


def parse_set(text: str) -> SymbolicSet:
    tokens = _tokenize(text)
    result, pos = _parse_term(tokens, 0)
    while pos < len(tokens):
        op = tokens[pos]
        if op not in ("+", "\\"):
            raise SetFormatError(f"expected '+' or '\\', got {op!r}")
        rhs, pos = _parse_term(tokens, pos + 1)
        result = result | rhs if op == "+" else result - rhs
    return result


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "+\\{}();,[]":
            out.append(c)
            i += 1
        elif c == "-" or c.isdigit():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        elif c.isalpha() or c == "<":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "<"):
                j += 1
            out.append(text[i:j])
            i = j
        else:
            raise SetFormatError(f"bad character {c!r} in set literal")
    return out


def _expect(tokens: list[str], pos: int, tok: str) -> int:
    if pos >= len(tokens) or tokens[pos] != tok:
        got = tokens[pos] if pos < len(tokens) else "<end>"
        raise SetFormatError(f"expected {tok!r}, got {got!r}")
    return pos + 1


def _parse_int(tokens: list[str], pos: int) -> tuple[int, int]:
    try:
        return int(tokens[pos]), pos + 1
    except (IndexError, ValueError):
        raise SetFormatError("expected an integer") from None


def _parse_int_list(tokens: list[str], pos: int,
                    close: str) -> tuple[list[int], int]:
    xs: list[int] = []
    if pos < len(tokens) and tokens[pos] == close:
        return xs, pos + 1
    while True:
        x, pos = _parse_int(tokens, pos)
        xs.append(x)
        if pos < len(tokens) and tokens[pos] == ",":
            pos += 1
            continue
        pos = _expect(tokens, pos, close)
        return xs, pos


def _parse_term(tokens: list[str], pos: int) -> tuple[SymbolicSet, int]:
    if pos >= len(tokens):
        raise SetFormatError("unexpected end of set literal")
    tok = tokens[pos]
    if tok == "Z":
        return universe(), pos + 1
    if tok == "evens<0":
        return negative_evens(), pos + 1
    if tok == "odds<0":
        return negative_odds(), pos + 1
    if tok in ("tail", "upto"):
        pos = _expect(tokens, pos + 1, "(")
        n, pos = _parse_int(tokens, pos)
        pos = _expect(tokens, pos, ")")
        return (tail(n) if tok == "tail" else upto(n)), pos
    if tok == "finite" or tok == "{":
        if tok == "finite":
            pos = _expect(tokens, pos + 1, "{")
        else:
            pos += 1
        xs, pos = _parse_int_list(tokens, pos, "}")
        return finite(xs), pos
    if tok == "mod":
        pos = _expect(tokens, pos + 1, "(")
        p, pos = _parse_int(tokens, pos)
        pos = _expect(tokens, pos, ";")
        rs, pos = _parse_int_list(tokens, pos, ")")
        return residues(p, rs), pos
    if tok == "periodic":
        pos = _expect(tokens, pos + 1, "(")
        p, pos = _parse_int(tokens, pos)
        pos = _expect(tokens, pos, ";")
        pos = _expect(tokens, pos, "left")
        pos = _expect(tokens, pos, "{")
        left, pos = _parse_int_list(tokens, pos, "}")
        pos = _expect(tokens, pos, ";")
        pos = _expect(tokens, pos, "window")
        pos = _expect(tokens, pos, "[")
        lo, pos = _parse_int(tokens, pos)
        pos = _expect(tokens, pos, ",")
        hi, pos = _parse_int(tokens, pos)
        pos = _expect(tokens, pos, "]")
        pos = _expect(tokens, pos, "{")
        explicit, pos = _parse_int_list(tokens, pos, "}")
        pos = _expect(tokens, pos, ";")
        pos = _expect(tokens, pos, "right")
        pos = _expect(tokens, pos, "{")
        right, pos = _parse_int_list(tokens, pos, "}")
        pos = _expect(tokens, pos, ")")
        return normalize(p, lo, hi, explicit, left, right), pos
    raise SetFormatError(f"unrecognized token {tok!r}")
