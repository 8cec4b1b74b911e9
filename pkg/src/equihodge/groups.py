"""Discrete group models.

Two kinds of groups carry every computation in this package:

* ``FiniteGroup`` -- given by a full multiplication table, validated
  exhaustively (associativity, identity, inverses).
* ``FreeAbelianGroup`` -- rank-d lattice ``Z^d``, elements are integer
  tuples under componentwise addition.

Both carry an optional modular weight ``chi``: a homomorphism into the
positive rationals with ``chi(gh) = chi(g) chi(h)``.  A finite group only
admits the trivial weight (a finite subgroup of the positive rationals is
trivial), and the constructor enforces that; a free abelian group may carry
``chi(g) = prod c_i**g_i`` for positive rational constants ``c_i``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

ONE = Fraction(1)


class GroupValidationError(ValueError):
    pass


class FiniteGroup:
    """Finite group on elements 0..n-1 with an explicit Cayley table.

    ``table[a][b]`` is the product a*b.  ``names`` is an optional parallel
    list of printable element names.
    """

    is_finite = True

    def __init__(self, table, names=None, chi=None):
        n = len(table)
        if any(len(row) != n for row in table):
            raise GroupValidationError("multiplication table is not square")
        for row in table:
            for x in row:
                if not isinstance(x, int) or not 0 <= x < n:
                    raise GroupValidationError("table entry out of range")
        self.table = [list(row) for row in table]
        self.n = n
        self.names = list(names) if names is not None else [str(i) for i in range(n)]
        if len(self.names) != n:
            raise GroupValidationError("names list has wrong length")

        self.identity = self._find_identity()
        self._inv = self._find_inverses()
        self._check_associativity()

        if chi is not None and any(Fraction(chi(g)) != ONE for g in range(n)):
            raise GroupValidationError(
                "finite groups admit only the trivial modular weight"
            )

    def _find_identity(self):
        for e in range(self.n):
            if all(self.table[e][g] == g == self.table[g][e] for g in range(self.n)):
                return e
        raise GroupValidationError("no identity element")

    def _find_inverses(self):
        inv = [None] * self.n
        for g in range(self.n):
            for h in range(self.n):
                if self.table[g][h] == self.identity and self.table[h][g] == self.identity:
                    inv[g] = h
                    break
            if inv[g] is None:
                raise GroupValidationError(f"element {self.names[g]} has no inverse")
        return inv

    def _check_associativity(self):
        t = self.table
        for a, b, c in itertools.product(range(self.n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupValidationError(
                    f"associativity fails on ({self.names[a]},{self.names[b]},{self.names[c]})"
                )

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def chi(self, a):
        return ONE

    def elements(self):
        return range(self.n)

    def enumeration_window(self):
        return list(range(self.n))

    def name(self, g):
        return self.names[g]

    def product(self, gs):
        acc = self.identity
        for g in gs:
            acc = self.table[acc][g]
        return acc

    def __len__(self):
        return self.n

    @classmethod
    def cyclic(cls, n):
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        names = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
        return cls(table, names=names)

    @classmethod
    def trivial(cls):
        return cls([[0]], names=["e"])


class FreeAbelianGroup:
    """Z^d with componentwise addition; elements are int tuples of length d."""

    is_finite = False

    def __init__(self, rank, chi_bases=None, window_radius=2):
        if rank < 1:
            raise GroupValidationError("rank must be >= 1")
        self.rank = rank
        self.identity = (0,) * rank
        if chi_bases is None:
            chi_bases = [ONE] * rank
        self.chi_bases = [Fraction(c) for c in chi_bases]
        if len(self.chi_bases) != rank or any(c <= 0 for c in self.chi_bases):
            raise GroupValidationError("chi bases must be positive rationals, one per rank")
        self.window_radius = window_radius

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def chi(self, a):
        v = ONE
        for c, k in zip(self.chi_bases, a):
            v *= c**k
        return v

    def enumeration_window(self, radius=None):
        r = self.window_radius if radius is None else radius
        return [tuple(t) for t in itertools.product(range(-r, r + 1), repeat=self.rank)]

    def name(self, g):
        return "(" + ",".join(str(x) for x in g) + ")"

    def product(self, gs):
        acc = self.identity
        for g in gs:
            acc = self.mul(acc, g)
        return acc
