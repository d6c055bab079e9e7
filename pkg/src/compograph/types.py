"""Core value types: type sets, services, catalogs, and their set algebra.

Type names are opaque tokens compared by exact equality; there is no
subtyping or ontology matching. Every value here is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class TokenError(ValueError):
    """A type or service name violates the token rules."""


class UnknownServiceError(ValueError):
    """A service name does not exist in the catalog at hand."""


_FORBIDDEN = (":", ",", "->")


def validate_token(token: str) -> str:
    """Return ``token`` unchanged if it is a legal type/service name.

    Legal tokens are non-empty, contain no whitespace, and contain none of
    ``:``, ``,``, ``->`` (all reserved by the catalog DSL).
    """
    if not token:
        raise TokenError("token must be non-empty")
    if any(ch.isspace() for ch in token):
        raise TokenError(f"token {token!r} contains whitespace")
    for seq in _FORBIDDEN:
        if seq in token:
            raise TokenError(f"token {token!r} contains reserved {seq!r}")
    return token


class TypeSet:
    """An immutable set of type names.

    Iteration, serialization, and equality are all defined on the canonical
    form: members sorted lexicographically, joined by single commas with no
    spaces. That canonical text is used verbatim in JSON and DOT output.
    """

    __slots__ = ("_members", "_ordered")

    def __init__(self, members: Iterable[str] = ()) -> None:
        ordered = tuple(sorted(set(members)))
        for token in ordered:
            validate_token(token)
        self._members: frozenset[str] = frozenset(ordered)
        self._ordered: tuple[str, ...] = ordered

    @classmethod
    def parse(cls, text: str) -> "TypeSet":
        """Parse the canonical comma-joined form; ``""`` is the empty set."""
        if text == "":
            return cls()
        return cls(text.split(","))

    @property
    def members(self) -> frozenset[str]:
        return self._members

    def canonical(self) -> str:
        return ",".join(self._ordered)

    def __iter__(self) -> Iterator[str]:
        return iter(self._ordered)

    def __len__(self) -> int:
        return len(self._ordered)

    def __contains__(self, token: object) -> bool:
        return token in self._members

    def __bool__(self) -> bool:
        return bool(self._ordered)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TypeSet):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"TypeSet({self.canonical()!r})"


def intersect(a: TypeSet, b: TypeSet) -> TypeSet:
    return TypeSet(a.members & b.members)


def union(a: TypeSet, b: TypeSet) -> TypeSet:
    return TypeSet(a.members | b.members)


def includes(a: TypeSet, b: TypeSet) -> bool:
    """True iff every member of ``a`` is also a member of ``b``."""
    return a.members <= b.members


def remove(a: TypeSet, b: TypeSet) -> TypeSet:
    """Set difference: the members of ``a`` that are not in ``b``."""
    return TypeSet(a.members - b.members)


def card(a: TypeSet) -> int:
    return len(a)


@dataclass(frozen=True)
class Service:
    """A named atomic service: the types it consumes and the types it produces.

    Both sets must be non-empty: a service without inputs can never be
    invoked by another, and a service without outputs contributes nothing.
    """

    name: str
    inputs: TypeSet
    outputs: TypeSet

    def __post_init__(self) -> None:
        validate_token(self.name)
        if not self.inputs:
            raise ValueError(f"service {self.name!r} needs at least one input type")
        if not self.outputs:
            raise ValueError(f"service {self.name!r} needs at least one output type")


@dataclass(frozen=True)
class Catalog:
    """A named collection of services with pairwise distinct names.

    Services iterate in lexicographic name order regardless of the order
    they were declared in, so everything downstream is deterministic.
    """

    name: str
    services: tuple[Service, ...] = ()

    def __post_init__(self) -> None:
        validate_token(self.name)
        ordered = tuple(sorted(self.services, key=lambda svc: svc.name))
        names = [svc.name for svc in ordered]
        duplicated = sorted({n for n in names if names.count(n) > 1})
        if duplicated:
            raise ValueError(f"duplicate service name(s): {', '.join(duplicated)}")
        object.__setattr__(self, "services", ordered)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(svc.name for svc in self.services)

    def get(self, name: str) -> Service:
        for svc in self.services:
            if svc.name == name:
                return svc
        raise UnknownServiceError(f"no service named {name!r} in catalog {self.name!r}")

    def __iter__(self) -> Iterator[Service]:
        return iter(self.services)

    def __len__(self) -> int:
        return len(self.services)

    def __contains__(self, name: object) -> bool:
        return any(svc.name == name for svc in self.services)
