"""Permutations, shuffles and restricted shuffles.

A permutation is stored in one-line notation: ``images[k]`` is the label of
the variable occupying position ``k + 1`` of the ordering, so the domain
``x_{s(1)} <= x_{s(2)} <= ... <= x_{s(n)}`` is described by ``s.images``.
Labels live on the ground set ``{offset + 1, ..., offset + n}``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidInput(ValueError):
    """Raised when arguments violate an operation's preconditions."""


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]
    offset: int = 0

    def __post_init__(self) -> None:
        imgs = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(self.offset + 1, self.offset + len(imgs) + 1)):
            raise InvalidInput(
                f"{list(imgs)} is not a bijection of "
                f"{{{self.offset + 1}..{self.offset + len(imgs)}}}"
            )

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int, offset: int = 0) -> "Permutation":
        return cls(tuple(range(offset + 1, offset + n + 1)), offset)

    @classmethod
    def parse(cls, text: str, offset: int = 0) -> "Permutation":
        """Parse ``"[2,1,3]"`` (or ``"2 1 3"``) into a permutation."""
        try:
            vals = json.loads(text) if text.strip().startswith("[") else [int(t) for t in text.split()]
        except (ValueError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot parse permutation {text!r}") from exc
        if not isinstance(vals, list):
            raise InvalidInput(f"cannot parse permutation {text!r}")
        return cls(tuple(vals), offset)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __len__(self) -> int:
        return self.n

    def shifted(self, offset: int) -> "Permutation":
        """Same pattern relabelled onto ``{offset+1, ..., offset+n}``."""
        d = offset - self.offset
        return Permutation(tuple(v + d for v in self.images), offset)

    def normalized(self) -> "Permutation":
        return self.shifted(0)

    def positions(self) -> dict[int, int]:
        """label -> position in the ordering (0-based)."""
        return {v: k for k, v in enumerate(self.images)}

    def inverse(self) -> "Permutation":
        p = self.normalized()
        inv = [0] * p.n
        for k, v in enumerate(p.images):
            inv[v - 1] = k + 1
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Function composition ``self o other`` on ``{1..n}``."""
        a, b = self.normalized(), other.normalized()
        if a.n != b.n:
            raise InvalidInput("cannot compose permutations of different sizes")
        return Permutation(tuple(a.images[v - 1] for v in b.images))


def _labels(p: Permutation) -> set[int]:
    return set(range(p.offset + 1, p.offset + p.n + 1))


def _blocks(sigma: Permutation, tau: Permutation) -> tuple[Permutation, Permutation]:
    """Normalize ``(sigma, tau)`` to ground sets ``{1..m}`` and ``{m+1..m+n}``.

    ``tau`` given on ``{1..n}`` is accepted and shifted; any other placement
    must already be the consecutive block right after ``sigma``.
    """
    sigma = sigma.normalized()
    if tau.offset == 0 and sigma.n > 0:
        tau = tau.shifted(sigma.n)
    if tau.n and tau.offset != sigma.n:
        raise InvalidInput(
            f"ground sets {{1..{sigma.n}}} and {{{tau.offset + 1}..{tau.offset + tau.n}}} "
            "are not consecutive"
        )
    return sigma, tau.shifted(sigma.n)


def shuffles(sigma: Permutation, tau: Permutation) -> list[Permutation]:
    """All interleavings of the orderings ``sigma`` and ``tau``, sorted."""
    sigma, tau = _blocks(sigma, tau)
    m, n = sigma.n, tau.n
    out = []
    for left in itertools.combinations(range(m + n), m):
        slots = set(left)
        a, b = iter(sigma.images), iter(tau.images)
        out.append(tuple(next(a) if k in slots else next(b) for k in range(m + n)))
    return [Permutation(p) for p in sorted(out)]


def is_shuffle(rho: Permutation, sigma: Permutation, tau: Permutation) -> bool:
    """Check the order-refinement property pairwise, straight from the definition."""
    sigma, tau = _blocks(sigma, tau)
    rho = rho.normalized()
    if rho.n != sigma.n + tau.n:
        raise InvalidInput("rho must permute the union of both ground sets")
    pos = rho.positions()
    for block in (sigma, tau):
        bpos = block.positions()
        for a, b in itertools.combinations(bpos, 2):
            if (pos[a] < pos[b]) != (bpos[a] < bpos[b]):
                return False
    return True


def concat_perm(sigma: Permutation, tau: Permutation) -> Permutation:
    """``(sigma, tau)``: sigma on the first block, tau shifted onto the second."""
    sigma = sigma.normalized()
    return Permutation(sigma.images + tau.shifted(sigma.n).images)


def restricted_shuffles(sigma: Permutation, tau: Permutation, i: int, j: int) -> list[Permutation]:
    """Shuffles whose first ``i + j`` entries are sigma's first ``i`` and tau's first ``j``.

    This is the cut condition: with a wall after position ``i + j`` of rho,
    the wall falls after position ``i`` of sigma and after position ``j`` of tau.
    """
    sigma, tau = _blocks(sigma, tau)
    if not (0 <= i <= sigma.n and 0 <= j <= tau.n):
        raise InvalidInput(f"cut ({i}, {j}) out of range for sizes ({sigma.n}, {tau.n})")
    front = set(sigma.images[:i]) | set(tau.images[:j])
    return [r for r in shuffles(sigma, tau) if set(r.images[: i + j]) == front]


def triple_shuffles(sigma: Permutation, tau: Permutation, zeta: Permutation) -> list[Permutation]:
    """Interleavings of three consecutive blocks."""
    sigma, tau = _blocks(sigma, tau)
    if zeta.offset == 0 and sigma.n + tau.n > 0:
        zeta = zeta.shifted(sigma.n + tau.n)
    if zeta.n and zeta.offset != sigma.n + tau.n:
        raise InvalidInput("third ground set is not consecutive")
    zeta = zeta.shifted(sigma.n + tau.n)
    seen = set()
    for rho in shuffles(sigma, tau):
        seen.update(shuffles(rho, zeta))
    return sorted(seen)


def all_permutations(n: int) -> Iterable[Permutation]:
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)


def dumps_set(perms: Sequence[Permutation]) -> str:
    return json.dumps([list(p.images) for p in perms], separators=(",", ":"))
