"""Symbolic states of the reduction.

The formal symbols ``n``, ``k`` and ``l`` never appear as numbers.  A state
only records integer offsets from them: ``dn`` for the psi power at the first
point, ``dp`` for the number of ``tau_{0,1}`` tail insertions (``p = k + dp``).
The ``tau_{0,0}`` tail count is always exactly ``l``, so it has no field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .algebra import KPoly, Scalar


class EtaFactor(NamedTuple):
    """One insertion ``eta_{label, weight}``."""

    label: int
    weight: int

    def check(self) -> "EtaFactor":
        if self.label not in (0, 1):
            raise ValueError(f"eta label must be 0 or 1, got {self.label}")
        if self.weight < 1:
            raise ValueError(f"eta weight must be >= 1, got {self.weight}")
        return self


def eta(label: int, weight: int) -> EtaFactor:
    return EtaFactor(label, weight).check()


def eta_multiset(factors: Iterable) -> tuple[EtaFactor, ...]:
    """Canonical (sorted) form of a multiset of eta factors."""
    return tuple(sorted(EtaFactor(*f).check() for f in factors))


@dataclass(frozen=True)
class UState:
    genus: int
    dn: int
    m: int
    dp: int
    etas: tuple[EtaFactor, ...] = field(default=())

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("negative genus states are never constructed")
        if self.m not in (0, 1):
            raise ValueError(f"m must be 0 or 1, got {self.m}")
        object.__setattr__(
            self, "etas", tuple(EtaFactor(*f).check() for f in self.etas)
        )

    @property
    def t(self) -> int:
        return len(self.etas)

    def to_json(self) -> dict:
        return {
            "g": self.genus,
            "dn": self.dn,
            "m": self.m,
            "dp": self.dp,
            "etas": [[f.label, f.weight] for f in self.etas],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "UState":
        return cls(data["g"], data["dn"], data["m"], data["dp"],
                   tuple(EtaFactor(*f) for f in data["etas"]))

    def __str__(self) -> str:
        etas = ",".join(f"{f.label}:{f.weight}" for f in self.etas)
        return f"U(g={self.genus}, dn={self.dn}, m={self.m}, dp={self.dp} | {etas})"


def canonical_ustate(s: UState) -> UState:
    """Sort the eta multiset; idempotent, used as the memo key."""
    etas = eta_multiset(s.etas)
    return s if etas == s.etas else replace(s, etas=etas)


class CorrelatorKey(NamedTuple):
    """Genus-zero symbol ``<tau_{n+shift,m} tau_{0,1}^{k+r} tau_{0,0}^l>_0``."""

    m: int
    shift: int
    r: int

    def to_json(self) -> dict:
        return {"m": self.m, "shift": self.shift, "r": self.r}

    @classmethod
    def from_json(cls, data: Mapping) -> "CorrelatorKey":
        return cls(data["m"], data["shift"], data["r"])

    def __str__(self) -> str:
        return f"<m={self.m}, shift={self.shift}, r={self.r}>"


class LinComb:
    """Finite map ``CorrelatorKey -> KPoly`` with zero coefficients pruned."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[CorrelatorKey, KPoly] = {}
        for key, coeff in items:
            key = CorrelatorKey(*key)
            acc[key] = acc.get(key, KPoly()) + KPoly.coerce(coeff)
        self._terms = {k: v for k, v in sorted(acc.items()) if not v.is_zero()}

    @classmethod
    def single(cls, key: CorrelatorKey, coeff: Union[KPoly, Scalar] = 1) -> "LinComb":
        return cls({key: coeff})

    def items(self) -> Iterator[tuple[CorrelatorKey, KPoly]]:
        return iter(self._terms.items())

    def keys(self):
        return self._terms.keys()

    def __getitem__(self, key) -> KPoly:
        return self._terms.get(CorrelatorKey(*key), KPoly())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(list(self.items()) + list(other.items()))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def scale(self, c: Union[KPoly, Scalar]) -> "LinComb":
        c = KPoly.coerce(c)
        return LinComb((k, v * c) for k, v in self.items())

    def __truediv__(self, c: Scalar) -> "LinComb":
        return LinComb((k, v / c) for k, v in self.items())

    def max_degree(self) -> int:
        return max((v.degree for v in self._terms.values()), default=-1)

    def to_json(self) -> list[dict]:
        return [{"key": k.to_json(), "coeff": v.to_json()} for k, v in self.items()]

    @classmethod
    def from_json(cls, data: list) -> "LinComb":
        return cls((CorrelatorKey.from_json(d["key"]), KPoly.from_json(d["coeff"]))
                   for d in data)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"LinComb({ {str(k): str(v) for k, v in self.items()} })"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{v} · {k}" for k, v in self.items())


def lincomb_add(a: LinComb, b: LinComb) -> LinComb:
    return a + b


def lincomb_scale(a: LinComb, c: Union[KPoly, Scalar]) -> LinComb:
    return a.scale(c)
