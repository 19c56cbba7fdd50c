"""Evaluate generator assignments into finite Heisenberg groups and verify
every defining relator of the braid presentation.

Verification is concrete: a relator passes iff the left-to-right product of
its letter images is the identity element of the target group.  No symbolic
rewriting happens anywhere, so a pass is a complete proof that the assignment
extends to a group homomorphism, and each failure names the printed relation
that broke.

Two standard assignments are provided.

* Non-degenerate family (p >= 5, parameters lambda, mu with nonzero entries,
  both sums 1 and lambda_j mu_j != 1):  target Heis(F_p^{4b}, Omega_b), with
  rho_1j, tau_1j, rho_2j, tau_2j mapped to the basis pairs r_1j, t_1j, r_2j,
  t_2j and A12 to the central z.  Note that tau_2j goes to t_2j; the variant
  sending it to r_2j instead is provided as a negative control and provably
  fails the relation [rho_1j, tau_2j] = A12^-1 (it evaluates to z).

* Degenerate family (p | b+1):  the rank-2b form identifies the two strands,
  so rho_1j and rho_2j share the image r_j, tau_1j and tau_2j share t_j, and
  A12 goes to z.  For odd p the target is the pair model on the 2b x 2b form
  J_b; for p = 2 it is the matrix group H_{2b+1}(F_2) with r_j -> X_j,
  t_j -> Y_j, z -> Z (the sign in [r_j, t_k] = z^{-d_jk} vanishes mod 2).

Subgroup indices come from a fast structural method cross-validated by an
exhaustive packed-element BFS oracle; the two must always agree where both
run, and the tests enforce that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .braid import (
    A12,
    RHO,
    TAU,
    BraidGenerator,
    Presentation,
    Word,
    generator_list,
    involution_substitute,
    kernel_generator_sets,
)
from .errors import EnumerationBoundError, PreconditionError
from .fplinalg import AlternatingForm, FpMatrix, is_prime
from .heisenberg import HeisGroup, MatrixHeisGroup, _CocycleGroup


@dataclass(frozen=True)
class GeneratorAssignment:
    """Images of every presentation generator in a fixed target group."""

    b: int
    p: int
    family: str
    target: _CocycleGroup
    images: dict

    def image(self, gen: BraidGenerator, exp: int = 1):
        try:
            g = self.images[gen]
        except KeyError:
            raise PreconditionError(f"no image assigned to generator {gen.display()}") from None
        return g if exp == 1 else self.target.inv(g)


def evaluate_word(assignment: GeneratorAssignment, word: Word):
    """Left-to-right product of letter images; empty word gives the identity."""
    acc = assignment.target.identity
    for gen, exp in word:
        acc = assignment.target.mul(acc, assignment.image(gen, exp))
    return acc


@dataclass(frozen=True)
class VerificationReport:
    b: int
    p: int
    family: str
    total_relators: int
    passed: int
    failures: tuple  # (relator index, source label, evaluated element)
    a12_order: int
    m1: int
    m2: int
    is_surjective: bool

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total_relators

    def to_json_dict(self) -> dict:
        out = {
            "b": self.b,
            "p": self.p,
            "family": self.family,
            "relators": self.total_relators,
            "passed": self.passed,
            "a12_order": self.a12_order,
            "m1": self.m1,
            "m2": self.m2,
            "surjective": self.is_surjective,
        }
        if self.failures:
            out["failures"] = [
                {"index": i, "source": src, "value": repr(elt)} for i, src, elt in self.failures
            ]
        return out


def verify_assignment(pres: Presentation, assignment: GeneratorAssignment) -> VerificationReport:
    """Evaluate every relator; failures are recorded, never raised."""
    target = assignment.target
    identity = target.identity
    failures = []
    for idx, rel in enumerate(pres.relators):
        value = evaluate_word(assignment, rel.word)
        if value != identity:
            failures.append((idx, rel.source, value))
    first, second = kernel_generator_sets(pres.b)
    m1 = image_index(assignment, first)
    m2 = image_index(assignment, second)
    return VerificationReport(
        b=assignment.b,
        p=assignment.p,
        family=assignment.family,
        total_relators=len(pres.relators),
        passed=len(pres.relators) - len(failures),
        failures=tuple(failures),
        a12_order=target.order_of(assignment.image(A12)),
        m1=m1,
        m2=m2,
        is_surjective=image_index(assignment, pres.generators) == 1,
    )


# ---------------------------------------------------------------------------
# standard assignments
# ---------------------------------------------------------------------------


def _validated_params(b: int, p: int, lambdas: Sequence[int], mus: Sequence[int]):
    lam = tuple(int(x) % p for x in lambdas)
    mu = tuple(int(x) % p for x in mus)
    if len(lam) != b or len(mu) != b:
        raise PreconditionError(f"need {b} lambdas and {b} mus, got {len(lam)} and {len(mu)}")
    if any(x == 0 for x in lam + mu):
        raise PreconditionError("all lambda_j and mu_j must be nonzero mod p")
    if sum(lam) % p != 1:
        raise PreconditionError(f"sum of lambdas is {sum(lam) % p}, must be 1 mod {p}")
    if sum(mu) % p != 1:
        raise PreconditionError(f"sum of mus is {sum(mu) % p}, must be 1 mod {p}")
    for j, (lj, mj) in enumerate(zip(lam, mu), start=1):
        if (lj * mj) % p == 1:
            raise PreconditionError(f"lambda_{j} * mu_{j} = 1 mod {p}; the form would be degenerate")
    return lam, mu


def _nondegenerate_images(b: int, group: HeisGroup) -> dict:
    """rho/tau generators to the ordered basis pairs, A12 to the center."""
    images = {}
    for strand in (1, 2):
        for j in range(1, b + 1):
            base = (strand - 1) * 2 * b + 2 * (j - 1)
            images[BraidGenerator(RHO, strand, j)] = group.basis_element(base)
            images[BraidGenerator(TAU, strand, j)] = group.basis_element(base + 1)
    images[A12] = group.central(1)
    return images


def standard_assignment_nondegenerate(
    b: int, p: int, lambdas: Sequence[int], mus: Sequence[int]
) -> GeneratorAssignment:
    """The lifting onto Heis(F_p^{4b}, Omega_b(lambda, mu)).

    Requires p >= 5: for p = 3 the constraint lambda_j mu_j != 1 forces
    mu_j = -lambda_j, which contradicts both sums being 1, so no valid
    parameters exist at all.
    """
    if b < 2:
        raise PreconditionError(f"genus b must be >= 2, got {b}")
    if not is_prime(p) or p < 5:
        raise PreconditionError(f"the non-degenerate family needs a prime p >= 5, got {p}")
    lam, mu = _validated_params(b, p, lambdas, mus)
    group = HeisGroup(AlternatingForm.family(b, p, lam, mu))
    return GeneratorAssignment(b, p, "nondegenerate", group, _nondegenerate_images(b, group))


def tau2_to_r2_variant(b: int, p: int, lambdas: Sequence[int], mus: Sequence[int]) -> GeneratorAssignment:
    """Negative control: like the standard non-degenerate assignment but with
    every tau_2j sent to r_2j (the image of rho_2j).

    Then [rho_1j, tau_2j] evaluates to [r_1j, r_2j] = 1 while the relation
    demands A12^-1 = z^-1, so the relator fails with value z.
    """
    base = standard_assignment_nondegenerate(b, p, lambdas, mus)
    images = dict(base.images)
    for j in range(1, b + 1):
        images[BraidGenerator(TAU, 2, j)] = images[BraidGenerator(RHO, 2, j)]
    return GeneratorAssignment(b, p, "nondegenerate-tau2-as-r2", base.target, images)


def standard_assignment_degenerate(b: int, p: int) -> GeneratorAssignment:
    """The strand-identifying epimorphism onto a group of order p^{2b+1}.

    Valid exactly when p divides b+1 (both surface relations evaluate to
    z^{+-b}, which equals z^{-+1} precisely then).
    """
    if b < 2:
        raise PreconditionError(f"genus b must be >= 2, got {b}")
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if (b + 1) % p != 0:
        raise PreconditionError(f"the degenerate family needs p | b+1; {p} does not divide {b + 1}")
    images = {}
    if p == 2:
        mgroup = MatrixHeisGroup(b, 2)
        for j in range(1, b + 1):
            images[BraidGenerator(RHO, 1, j)] = mgroup.x_generator(j)
            images[BraidGenerator(RHO, 2, j)] = mgroup.x_generator(j)
            images[BraidGenerator(TAU, 1, j)] = mgroup.y_generator(j)
            images[BraidGenerator(TAU, 2, j)] = mgroup.y_generator(j)
        images[A12] = mgroup.central(1)
        return GeneratorAssignment(b, p, "degenerate", mgroup, images)
    group = HeisGroup(AlternatingForm.j_form(b, p))
    for j in range(1, b + 1):
        images[BraidGenerator(RHO, 1, j)] = group.basis_element(2 * (j - 1))
        images[BraidGenerator(RHO, 2, j)] = group.basis_element(2 * (j - 1))
        images[BraidGenerator(TAU, 1, j)] = group.basis_element(2 * (j - 1) + 1)
        images[BraidGenerator(TAU, 2, j)] = group.basis_element(2 * (j - 1) + 1)
    images[A12] = group.central(1)
    return GeneratorAssignment(b, p, "degenerate", group, images)


def precompose_involution(assignment: GeneratorAssignment) -> GeneratorAssignment:
    """Precompose with the handle-reflection substitution.

    The substitution extends to an automorphism of the braid group, so if the
    original assignment kills every relator the precomposed one must too.
    """
    b = assignment.b
    images = {}
    for gen in generator_list(b):
        sub = involution_substitute(((gen, 1),), b)
        (sgen, sexp), = sub
        images[gen] = assignment.image(sgen, sexp)
    return GeneratorAssignment(
        assignment.b, assignment.p, assignment.family + "+involution", assignment.target, images
    )


# ---------------------------------------------------------------------------
# subgroup orders and indices
# ---------------------------------------------------------------------------


def subgroup_order_fast(group: _CocycleGroup, elements: Sequence) -> int:
    """Order of the subgroup generated by ``elements``, without enumeration.

    Write each generator as (u_i, s_i).  The projection to the vector part is
    a homomorphism onto the span of the u_i (dimension d), with kernel the
    intersection with the central F_p, so the order is p^d or p^{d+1}
    according to whether that intersection is nontrivial.  It is nontrivial
    iff one of the following holds:

    * some pair fails to commute (the commutator is a nonzero central value);
    * some generator has a nontrivial central power (only possible for p = 2,
      where g^2 carries the cocycle value c(v, v));
    * otherwise the generated subgroup is abelian with every generator of
      order dividing p, and the ordered-product map from exponent vectors is
      a homomorphism; the center is hit iff the product over some null
      combination of the projections is a nonzero central element, which is
      linear on the null space, so checking a basis of it suffices.
    """
    p = group.p
    m = len(elements)
    if m == 0:
        return 1
    proj = np.array([group.projection(g) for g in elements], dtype=np.int64)
    d = FpMatrix(proj, p).rank()

    center_hit = False
    pairing = (proj @ group.comm_form @ proj.T) % p
    if pairing.any():
        center_hit = True
    if not center_hit:
        for g in elements:
            if group.power(g, p) != group.identity:
                center_hit = True
                break
    if not center_hit:
        for null in FpMatrix(proj.T, p).kernel_basis():
            acc = group.identity
            for coeff, g in zip(null, elements):
                acc = group.mul(acc, group.power(g, int(coeff)))
            if acc != group.identity:
                center_hit = True
                break
    return p ** (d + (1 if center_hit else 0))


def image_index(assignment: GeneratorAssignment, generators: Sequence[BraidGenerator]) -> int:
    """Index in the target of the subgroup generated by the given images."""
    elements = [assignment.image(g) for g in generators]
    order = subgroup_order_fast(assignment.target, elements)
    return assignment.target.order // order


def bfs_subgroup_order(group: _CocycleGroup, elements: Sequence, bound: int = 10**7) -> int:
    """Exhaustive oracle: breadth-first closure over packed elements.

    Independent of ``subgroup_order_fast`` by construction; kept for
    cross-validation and refused (not approximated) beyond the bound.
    """
    if group.order > bound:
        raise EnumerationBoundError(
            f"group order {group.order} exceeds the enumeration bound {bound}"
        )
    rows = []
    for g in elements:
        for h in (g, group.inv(g)):
            v = np.array(group.projection(h), dtype=np.int64)
            t = h.t if hasattr(h, "t") else h.z
            rows.append(np.concatenate([v, [t]]))
    if not rows:
        return 1
    gens = np.stack(rows)
    return _backend.bfs_closure(group.p, group.dim, group._c, gens, group.order)


def report_json(report: VerificationReport, indent: Optional[int] = None) -> str:
    return json.dumps(report.to_json_dict(), indent=indent)
