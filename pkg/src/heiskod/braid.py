"""The pure braid group on two strings of a genus-b surface, as explicit data.

Generators: rho_{1j}, tau_{1j}, rho_{2j}, tau_{2j} for j = 1..b, plus the
winding generator A12.  The presentation has 8b^2 + 4b + 2 defining relations:
two surface relations and, for each of the four actors rho_1j, rho_1j^-1,
tau_1j, tau_1j^-1 and each j, one relation per target rho_2k, tau_2k (k=1..b)
and one for A12.  A relation L = R is stored as the single relator word
L . R^-1, freely reduced; the commutator convention is [x, y] = x y x^-1 y^-1.

The inverse-actor families are consequences of the direct ones, but they are
emitted anyway: redundancy strengthens homomorphism verification, and keeping
the three j-versus-k cases separate means a failure pinpoints one precise
relation.

The presentation is invariant under the order-2 substitution

    A12 <-> A12^-1,  tau_1j <-> tau_{2, b+1-j}^-1,  rho_1j <-> rho_{2, b+1-j},

the automorphism induced by reflecting the surface so that handle j swaps
with handle b+1-j; ``involution_substitute`` applies it letter by letter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import PreconditionError

RHO = "rho"
TAU = "tau"
WINDING = "A"


@dataclass(frozen=True, order=True)
class BraidGenerator:
    """Structured key of a generator; strand and j are None only for A12."""

    kind: str
    strand: Optional[int] = None
    j: Optional[int] = None

    def __post_init__(self):
        if self.kind == WINDING:
            if self.strand is not None or self.j is not None:
                raise PreconditionError("A12 carries no strand or handle index")
        elif self.kind in (RHO, TAU):
            if self.strand not in (1, 2) or self.j is None or self.j < 1:
                raise PreconditionError(f"bad generator ({self.kind}, {self.strand}, {self.j})")
        else:
            raise PreconditionError(f"unknown generator kind {self.kind!r}")

    def display(self) -> str:
        if self.kind == WINDING:
            return "A12"
        return f"{'r' if self.kind == RHO else 't'}{self.strand}_{self.j}"


_GEN_RE = re.compile(r"^([rt])([12])_([0-9]+)$")


def parse_generator(text: str) -> tuple[BraidGenerator, int]:
    """Parse display syntax like ``r1_3``, ``t2_1^-1`` or ``A12``."""
    exp = 1
    if text.endswith("^-1"):
        exp = -1
        text = text[:-3]
    if text == "A12":
        return A12, exp
    m = _GEN_RE.match(text)
    if not m:
        raise PreconditionError(f"cannot parse generator {text!r}")
    kind = RHO if m.group(1) == "r" else TAU
    return BraidGenerator(kind, int(m.group(2)), int(m.group(3))), exp


A12 = BraidGenerator(WINDING)

# A word is a tuple of (generator, +1 | -1) letters.
Letter = tuple[BraidGenerator, int]
Word = tuple[Letter, ...]


def rho(strand: int, j: int, exp: int = 1) -> Word:
    return ((BraidGenerator(RHO, strand, j), exp),)


def tau(strand: int, j: int, exp: int = 1) -> Word:
    return ((BraidGenerator(TAU, strand, j), exp),)


def winding(exp: int = 1) -> Word:
    return ((A12, exp),)


def concat(*words: Word) -> Word:
    out: list[Letter] = []
    for w in words:
        out.extend(w)
    return tuple(out)


def inverse_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return concat(x, y, inverse_word(x), inverse_word(y))


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for g, e in w:
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def word_display(w: Word) -> list[str]:
    return [g.display() + ("" if e == 1 else "^-1") for g, e in w]


def parse_word(tokens: Iterable[str]) -> Word:
    return tuple(parse_generator(t) for t in tokens)


@dataclass(frozen=True)
class Relator:
    """A freely reduced word equal to the identity, with its printed source."""

    word: Word
    source: str


@dataclass(frozen=True)
class Presentation:
    b: int
    generators: tuple[BraidGenerator, ...]
    relators: tuple[Relator, ...]


def generator_list(b: int) -> tuple[BraidGenerator, ...]:
    """All 4b+1 generators, ordered to match the homology basis:
    rho_11, tau_11, ..., rho_1b, tau_1b, rho_21, tau_21, ..., rho_2b, tau_2b, A12."""
    gens: list[BraidGenerator] = []
    for strand in (1, 2):
        for j in range(1, b + 1):
            gens.append(BraidGenerator(RHO, strand, j))
            gens.append(BraidGenerator(TAU, strand, j))
    gens.append(A12)
    return tuple(gens)


def _relation(left: Word, right: Word, source: str) -> Relator:
    return Relator(free_reduce(concat(left, inverse_word(right))), source)


def _surface_relators(b: int) -> list[Relator]:
    # relation 1: [rho_1b^-1, tau_1b^-1] tau_1b^-1 ... [rho_11^-1, tau_11^-1]
    #             tau_11^-1 (tau_11 tau_12 ... tau_1b) = A12
    left: Word = ()
    for j in range(b, 0, -1):
        left = concat(left, commutator(rho(1, j, -1), tau(1, j, -1)), tau(1, j, -1))
    for j in range(1, b + 1):
        left = concat(left, tau(1, j))
    rel1 = _relation(left, winding(), "surface relation 1")

    # relation 2: [rho_21^-1, tau_21] tau_21 ... [rho_2b^-1, tau_2b] tau_2b
    #             (tau_2b^-1 ... tau_21^-1) = A12^-1
    left = ()
    for j in range(1, b + 1):
        left = concat(left, commutator(rho(2, j, -1), tau(2, j)), tau(2, j))
    for j in range(b, 0, -1):
        left = concat(left, tau(2, j, -1))
    rel2 = _relation(left, winding(-1), "surface relation 2")
    return [rel1, rel2]


def _action_relators(b: int, actor_kind: str, actor_exp: int) -> list[Relator]:
    """The 2b+1 relations describing how one actor conjugates the kernel
    generators.  The case split j < k, j = k, j > k follows the printed form."""
    out: list[Relator] = []
    a = winding()
    ai = winding(-1)
    actor_name = f"{actor_kind}_1j" + ("" if actor_exp == 1 else "^-1")

    for j in range(1, b + 1):
        x = rho(1, j, actor_exp) if actor_kind == RHO else tau(1, j, actor_exp)

        for k in range(1, b + 1):
            lhs = commutator(x, rho(2, k))
            if j < k:
                rhs: Word = ()
            elif (actor_kind, actor_exp) == (RHO, 1):
                rhs = () if j == k else concat(ai, rho(2, k), rho(2, j, -1), a, rho(2, j), rho(2, k, -1))
            elif (actor_kind, actor_exp) == (RHO, -1):
                rhs = () if j == k else concat(rho(2, j), a, rho(2, j, -1), rho(2, k), ai, rho(2, k, -1))
            elif (actor_kind, actor_exp) == (TAU, 1):
                rhs = (
                    concat(tau(2, j, -1), a, tau(2, j))
                    if j == k
                    else commutator(tau(2, j, -1), a)
                )
            else:  # tau_1j^-1
                rhs = ai if j == k else commutator(ai, tau(2, j))
            case = "j=k" if j == k else ("j<k" if j < k else "j>k")
            out.append(_relation(lhs, rhs, f"action {actor_name} on rho_2k, j={j}, k={k} ({case})"))

        for k in range(1, b + 1):
            lhs = commutator(x, tau(2, k))
            if j < k:
                rhs = ()
            elif (actor_kind, actor_exp) == (RHO, 1):
                rhs = ai if j == k else commutator(ai, tau(2, k))
            elif (actor_kind, actor_exp) == (RHO, -1):
                rhs = (
                    concat(rho(2, j), a, rho(2, j, -1))
                    if j == k
                    else concat(
                        rho(2, j), a, rho(2, j, -1), tau(2, k), rho(2, j), ai, rho(2, j, -1), tau(2, k, -1)
                    )
                )
            elif (actor_kind, actor_exp) == (TAU, 1):
                rhs = (
                    commutator(tau(2, j, -1), a)
                    if j == k
                    else concat(
                        tau(2, j, -1), a, tau(2, j), ai, tau(2, k), a, tau(2, j, -1), ai, tau(2, j), tau(2, k, -1)
                    )
                )
            else:  # tau_1j^-1
                rhs = (
                    commutator(ai, tau(2, j))
                    if j == k
                    else concat(
                        ai, tau(2, j), a, tau(2, j, -1), tau(2, k), tau(2, j), ai, tau(2, j, -1), a, tau(2, k, -1)
                    )
                )
            case = "j=k" if j == k else ("j<k" if j < k else "j>k")
            out.append(_relation(lhs, rhs, f"action {actor_name} on tau_2k, j={j}, k={k} ({case})"))

        lhs = commutator(x, a)
        if (actor_kind, actor_exp) == (RHO, 1):
            rhs = commutator(rho(2, j, -1), a)
        elif (actor_kind, actor_exp) == (RHO, -1):
            rhs = commutator(rho(2, j), a)
        elif (actor_kind, actor_exp) == (TAU, 1):
            rhs = commutator(tau(2, j, -1), a)
        else:
            rhs = commutator(ai, tau(2, j))
        out.append(_relation(lhs, rhs, f"action {actor_name} on A12, j={j}"))

    return out


def build_presentation(b: int) -> Presentation:
    """The full presentation at genus b: 8b^2 + 4b + 2 relators."""
    if b < 2:
        raise PreconditionError(f"genus b must be >= 2, got {b}")
    relators = _surface_relators(b)
    for kind, exp in ((RHO, 1), (RHO, -1), (TAU, 1), (TAU, -1)):
        relators.extend(_action_relators(b, kind, exp))
    expected = 8 * b * b + 4 * b + 2
    assert len(relators) == expected, f"emitted {len(relators)} relators, expected {expected}"
    return Presentation(b=b, generators=generator_list(b), relators=tuple(relators))


def involution_substitute(w: Word, b: int) -> Word:
    """Apply the order-2 handle-reflection substitution letter by letter."""
    out: list[Letter] = []
    for g, e in w:
        if g.kind == WINDING:
            out.append((A12, -e))
        elif g.kind == RHO:
            out.append((BraidGenerator(RHO, 3 - g.strand, b + 1 - g.j), e))
        else:
            out.append((BraidGenerator(TAU, 3 - g.strand, b + 1 - g.j), -e))
    return tuple(out)


def kernel_generator_sets(b: int) -> tuple[tuple[BraidGenerator, ...], tuple[BraidGenerator, ...]]:
    """Generators of the kernels of the two projections to the one-point braid
    group: (rho_2*, tau_2*, A12) for the first projection, (rho_1*, tau_1*,
    A12) for the second."""
    if b < 2:
        raise PreconditionError(f"genus b must be >= 2, got {b}")
    first = tuple(BraidGenerator(RHO, 2, j) for j in range(1, b + 1)) + tuple(
        BraidGenerator(TAU, 2, j) for j in range(1, b + 1)
    ) + (A12,)
    second = tuple(BraidGenerator(RHO, 1, j) for j in range(1, b + 1)) + tuple(
        BraidGenerator(TAU, 1, j) for j in range(1, b + 1)
    ) + (A12,)
    return first, second


def presentation_to_json(pres: Presentation) -> list[dict]:
    return [{"relator": word_display(r.word), "source": r.source} for r in pres.relators]
