"""
Structural checks on root systems, relative bases, Weyl cosets, facets and
orthogonal families
"""
import logging
from collections import deque
from fractions import Fraction

from ..core.errors import OrthogonalityError
from ..core.rational import Vector, add, combine, is_zero, sub
from ..core.sampling import RationalSampler, SampleTally, run_samples
from ..geometry.context import ConeContext
from ..geometry.families import (
    constant_family,
    family_from_T,
    path_decomposition,
    perturbed,
    validate_orthogonal_family,
)
from ..geometry.parabolic import (
    base_angle_check,
    d_min,
    interval,
    positive_combination,
    relative_bases,
    verify_positivity_lemmas,
)
from ..geometry.root_system import check_invariants
from ..models.enums import IdentityId

logger = logging.getLogger(__name__)


def _chain(ctx: ConeContext, sampler: RationalSampler, length: int) -> list[frozenset]:
    subsets = [sampler.choice(ctx.standard_subsets())]
    for _ in range(length - 1):
        subsets.append(sampler.choice(interval(frozenset(), subsets[-1])))
    return list(reversed(subsets))


def check_root_system(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    rs = ctx.rs
    problems = check_invariants(rs)
    tally.record(not problems, system=rs.label, problems=problems)
    tally.notes["positive_roots"] = rs.n_positive
    tally.notes["weyl_order"] = len(ctx.W)


def check_positivity(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    P, Q, R = _chain(ctx, sampler, 3)
    for lemma, sub_tally in verify_positivity_lemmas(ctx.rs, P, Q, R, 1, sampler).items():
        tally.merge(sub_tally)
        counts = tally.notes.setdefault("checked_by_lemma", {})
        counts[lemma] = counts.get(lemma, 0) + sub_tally.checked


def check_angles(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    """Every pair P ⊆ Q: obtuse Δ_P^Q, acute Δ̂_P^Q, Δ̂ inside the cone of Δ; inclusions along P ⊆ Q ⊆ R"""
    rs = ctx.rs
    for R in ctx.standard_subsets():
        for P in interval(frozenset(), R):
            base = relative_bases(rs, P, R)
            obtuse, acute = base_angle_check(base)
            ok = obtuse and acute and positive_combination(base)
            for Q in interval(P, R):
                b_pq, b_qr = relative_bases(rs, P, Q), relative_bases(rs, Q, R)
                ok = ok and set(b_pq.delta) <= set(base.delta)
                ok = ok and set(b_qr.delta_hat) <= set(base.delta_hat)
                # Δ_P^S = Δ_P^R − Δ_P^Q para S = P ∪ (R − Q)
                b_ps = relative_bases(rs, P, P | (R - Q))
                ok = ok and set(b_ps.delta) == set(base.delta) - set(b_pq.delta)
            tally.record(ok, P=P, R=R, obtuse=obtuse, acute=acute)


def check_inversions(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    rs = W.rs
    n = rs.n_positive
    s, t = sampler.choice(range(len(W))), sampler.choice(range(len(W)))
    inv_s = W.inversion_set(s)
    ok = len(inv_s) == W.length(s)
    image = {W.act_root(t, b) for b in W.inversion_set(s, t)}
    ok = ok and image == set(W.inversion_set(W.mul(s, W.inv(t))))
    # ℛ(s) contido no espaço gerado por Δ^P ⇒ s ∈ W^P
    P = sampler.choice(ctx.standard_subsets())
    inside = all(all(c == 0 for i, c in enumerate(rs.simple_coords[k]) if i not in P) for k in inv_s)
    if inside:
        ok = ok and W.in_parabolic(s, P)
    tally.record(ok, s=W.word(s), t=W.word(t), P=P, n_positive=n)


def _double_coset_count(W, Q: frozenset, P: frozenset) -> tuple[int, bool]:
    """Orbits of W_Q × W_P on W by BFS, and whether each orbit has a unique shortest element"""
    orbit = [-1] * len(W)
    count = 0
    unique = True
    for start in range(len(W)):
        if orbit[start] >= 0:
            continue
        orbit[start] = count
        members = [start]
        queue = deque([start])
        while queue:
            e = queue.popleft()
            neighbours = [W.mul(W.simple[i], e) for i in Q] + [W.mul(e, W.simple[j]) for j in P]
            for f in neighbours:
                if orbit[f] < 0:
                    orbit[f] = count
                    members.append(f)
                    queue.append(f)
        shortest = min(W.length(e) for e in members)
        unique = unique and sum(1 for e in members if W.length(e) == shortest) == 1
        count += 1
    return count, unique


def check_cosets(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    n = W.rs.n_positive
    s = sampler.choice(range(len(W)))
    P = sampler.choice(ctx.standard_subsets())
    Q = sampler.choice(ctx.standard_subsets())
    m = W.min_coset_rep(s, P)
    sub_group = W.parabolic_subgroup(P)
    ok = all(W.perms[m][i] < n for i in P)
    ok = ok and W.mul(W.inv(m), s) in sub_group
    ok = ok and all(W.length(W.mul(m, t)) == W.length(m) + W.length(t) for t in sub_group)
    reps = W.double_coset_reps(Q, P)
    count, unique = _double_coset_count(W, Q, P)
    ok = ok and unique and len(reps) == count
    tally.record(ok, s=W.word(s), P=P, Q=Q, representatives=len(reps), orbits=count)


def check_weyl_sets(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    rank = W.rs.rank
    P = sampler.choice(ctx.standard_subsets())
    Q = sampler.choice(ctx.standard_subsets())
    R = sampler.choice(ctx.standard_subsets())
    pq = W.weyl_set_PQ(P, Q)
    ok = 0 in W.weyl_set_PQ(P, P)
    ok = ok and all(frozenset(W.perms[s][i] for i in P) == Q for s in pq)
    if pq:
        ok = ok and len(pq) == len(W.weyl_set_PQ(P, P))
    pr = W.weyl_set_PR(P, R)
    for s in pr:
        image = frozenset(W.perms[s][i] for i in P)
        ok = ok and all(k < rank for k in image) and image <= R
    # classes duplas W^R \ W / W^P com s(Φ_P) ⊂ Φ_R
    levi_p, levi_r = W.levi_roots(P), W.levi_roots(R)
    meeting = {W.min_coset_rep(s, P, R) for s in range(len(W))
               if all(W.perms[s][k] in levi_r for k in levi_p)}
    ok = ok and len(meeting) == len(pr)
    tally.record(ok, P=P, Q=Q, R=R, w_PQ=len(pq), w_PR=len(pr), double_cosets=len(meeting))


def check_facets(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    M = sampler.choice(ctx.standard_subsets())
    dec = W.facet_decomposition(M)
    facets = dec.facets
    ok = len(facets) == len(set(facets)) and set(facets) == W.facets_direct(M)
    ok = ok and len(set(dec.chambers)) == len(dec.elements) == len(W.weyl_set_M(M))
    ok = ok and dec.opposite is not None and len(dec.intervals[dec.opposite]) == 1
    values = {s: sampler.rat() for s in dec.elements}
    a_m = ctx.a_std(M)
    total = sum((-1 if (ctx.a(Q) - a_m) % 2 else 1) * values[s]
                for s in dec.elements for Q in dec.intervals[s])
    ok = ok and dec.opposite is not None and total == values[dec.opposite]
    tally.record(ok, M=M, facets=len(facets), chambers=len(dec.elements))


def check_regrouping(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    M = sampler.choice(ctx.standard_subsets())
    table: dict[tuple[int, frozenset], Fraction] = {}

    def g(s: int, R: frozenset) -> Fraction:
        key = (W.min_right_coset_rep(s, R), R)
        if key not in table:
            table[key] = sampler.rat()
        return table[key]

    left = sum((g(s, R) for R in ctx.standard_subsets() for s in W.weyl_set_PR(M, R)), Fraction(0))
    dec = W.facet_decomposition(M)
    right = Fraction(0)
    for s in dec.elements:
        for Q in dec.intervals[s]:
            right += g(s, Q.std)
    tally.record(left == right, M=M, left=left, right=right)


def check_weyl_levi(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    M = sampler.choice(ctx.standard_subsets())
    n_M = len(W.weyl_set_M(M))
    w_M = len(W.weyl_levi_group(M))
    ok = W.weyl_levi_homomorphism_holds(M)
    ok = ok and w_M > 0 and n_M % w_M == 0 and n_M // w_M == len(W.associated_standard(M))
    ok = ok and n_M == len(W.facet_decomposition(M).chambers)
    tally.record(ok, M=M, n=n_M, w=w_M)


def check_families(ctx: ConeContext, sampler: RationalSampler, tally: SampleTally) -> None:
    W = ctx.W
    rs = W.rs
    T0 = sampler.alpha_point(rs)
    step = sampler.regular_point(rs)
    fam = family_from_T(W, add(T0, step), T0)
    check = validate_orthogonal_family(fam)
    floor = d_min(rs, step)
    ok = check.regular and all(b >= floor for b in check.coefficients.values())

    s, t = sampler.choice(range(len(W))), sampler.choice(range(len(W)))
    path = path_decomposition(fam, s, t)
    rebuilt = combine(list(path.values()), [rs.coroots[b] for b in path], rs.dim)
    ok = ok and is_zero(sub(rebuilt, sub(fam.value(t), fam.value(s))))
    ok = ok and set(path) == set(W.inversion_set(s, t)) and all(b > 0 for b in path.values())

    flat = validate_orthogonal_family(constant_family(W, T0))
    ok = ok and not flat.regular and all(b == 0 for b in flat.coefficients.values())

    unit: Vector = tuple(Fraction(int(k == 0)) for k in range(rs.dim))
    broken = perturbed(fam, sampler.choice(range(len(W))), add(unit, sampler.alpha_point(rs)))
    try:
        validate_orthogonal_family(broken)
        ok = False
    except OrthogonalityError:
        pass
    tally.record(ok, T=add(T0, step), T0=T0, s=W.word(s), t=W.word(t))


STRUCTURE_CHECKS = {
    IdentityId.ROOT_SYSTEM: check_root_system,
    IdentityId.POSITIVITY: check_positivity,
    IdentityId.ANGLES: check_angles,
    IdentityId.INVERSIONS: check_inversions,
    IdentityId.COSETS: check_cosets,
    IdentityId.WEYL_SETS: check_weyl_sets,
    IdentityId.FACETS: check_facets,
    IdentityId.REGROUPING: check_regrouping,
    IdentityId.WEYL_LEVI: check_weyl_levi,
    IdentityId.FAMILIES: check_families,
}

# verificações exaustivas: executadas uma única vez, independente de n_samples
EXHAUSTIVE = frozenset({IdentityId.ROOT_SYSTEM, IdentityId.ANGLES})


def verify_structure(ctx: ConeContext, identity_id: IdentityId | str, n_samples: int,
                     seed: int | RationalSampler) -> SampleTally:
    identity_id = IdentityId(identity_id)
    check = STRUCTURE_CHECKS[identity_id]
    sampler = seed if isinstance(seed, RationalSampler) else RationalSampler(seed)
    runs = 1 if identity_id in EXHAUSTIVE else n_samples
    tally = run_samples(lambda smp, t: check(ctx, smp, t), runs, sampler)
    if not tally.passed:
        logger.warning("%s failed %d/%d on %s", identity_id.value, tally.failed, tally.checked, ctx.label)
    return tally
