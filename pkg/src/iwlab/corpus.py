"""Bundled corpora: groups, towers with place data, and local-datum generators.
Self-contained so every suite is reproducible without external files."""

from __future__ import annotations

from functools import lru_cache

from . import linalg
from .groups import (
    FiniteGroup,
    abelian_group,
    alternating_group,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    quaternion_group,
    semidirect_product,
    symmetric_group,
)
from .lfactors import LocalDatum
from .padic import PrecisionContext, make_root_of_unity
from .tower import AttestedTower, LieTower, PlaceDatum, SplitTower


@lru_cache(maxsize=None)
def corpus_groups() -> tuple:
    """(name, group) pairs: small abelian groups up to order 64 plus the
    standard nonabelian desk set."""
    groups = [
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        abelian_group(2, 2),
        cyclic_group(6),
        cyclic_group(8),
        abelian_group(2, 4),
        cyclic_group(12),
        cyclic_group(15),
        abelian_group(2, 2, 3),
        cyclic_group(64),
        symmetric_group(3),
        dihedral_group(4),
        quaternion_group(),
        alternating_group(4),
        dihedral_group(6),
        symmetric_group(4),
    ]
    return tuple((g.name, g) for g in groups)


def small_corpus_groups() -> tuple:
    """The corpus members of order <= 24 (used where quadratic costs bite)."""
    return tuple((n, g) for n, g in corpus_groups() if g.n <= 24)


def c7_c9_group() -> FiniteGroup:
    c7, c9 = cyclic_group(7), cyclic_group(9)
    action = [[(x * pow(2, b, 7)) % 7 for x in range(7)] for b in range(9)]
    return semidirect_product(c7, c9, action, name="C7:C9")


@lru_cache(maxsize=None)
def corpus_towers_key(p: int, cap_n: int, cap_d: int) -> tuple:
    ctx = PrecisionContext(p=p, cap_N=cap_n, cap_D=cap_d)
    towers: list[tuple[str, LieTower]] = [
        ("split-trivial", SplitTower(ctx, cyclic_group(1), n_max=2)),
        ("split-C2", SplitTower(ctx, cyclic_group(2), n_max=2)),
        ("split-S3", SplitTower(ctx, symmetric_group(3), n_max=1)),
    ]
    if p == 3:
        towers.append(
            ("attested-C7:C9", AttestedTower(ctx, c7_c9_group(), gamma=3, h_elements=frozenset(a * 9 for a in range(7)), n_max=1))
        )
    if p == 2:
        towers.append(
            ("attested-Dic3", AttestedTower(ctx, dicyclic_group(3), gamma=3, h_elements=frozenset([0, 2, 4]), n_max=1))
        )
    return tuple(towers)


def corpus_towers(ctx: PrecisionContext) -> tuple:
    return corpus_towers_key(ctx.p, ctx.cap_N, ctx.cap_D)


def worked_example_tower(ctx: PrecisionContext):
    """The combinatorial shadow of the 3-adic worked example: trivial H and a
    single finite place whose decomposition subgroup meets the tower direction
    in the index-p subgroup (k_v = 1)."""
    if ctx.p != 3:
        raise ValueError("the worked example is 3-adic")
    t = SplitTower(ctx, cyclic_group(1), n_max=2)
    q = ctx.p**t.n_max
    decomp = frozenset(x for x in range(q) if x % 3 == 0)
    v = PlaceDatum(t, "v3", archimedean=False, norm=27, decomp_elements=decomp)
    return t, v


def tower_places(tower: LieTower, name: str):
    """A reproducible set of finite places for a corpus tower: one fully split
    direction place (k_v = n_max) and one non-split place (k_v = 0)."""
    deep = tower.level(tower.n_max)
    g = deep.group
    nonsplit = PlaceDatum(tower, "w0", archimedean=False, norm=5, decomp_elements=frozenset(range(g.n)))
    split_dir = PlaceDatum(
        tower,
        "w1",
        archimedean=False,
        norm=7,
        decomp_elements=frozenset(deep.h_sub.elements),
    )
    return [nonsplit, split_dir]


def random_local_datum(ctx: PrecisionContext, rng, max_dim: int = 3) -> LocalDatum:
    """Finite-order Frobenius: permutation-of-roots-of-unity base conjugated by
    a random unimodular integral matrix."""
    dim = rng.randint(0, max_dim)
    norm = rng.choice([2, 3, 4, 5, 7, 9])
    if dim == 0:
        return LocalDatum(ctx, (), norm)
    perm = list(range(dim))
    rng.shuffle(perm)
    zero, one = ctx.zero(), ctx.one()
    base = [[zero] * dim for _ in range(dim)]
    for j in range(dim):
        order = rng.choice([1, 2, 3, 4, 6])
        base[perm[j]][j] = make_root_of_unity(ctx, order, rng.randrange(order)) if order > 1 else one
    u = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
    for _ in range(2 * dim):
        i, j = rng.randrange(dim), rng.randrange(dim)
        if i != j:
            c = ctx.make(rng.randint(-2, 2))
            for k in range(dim):
                u[i][k] = u[i][k] + c * u[j][k]
    mat = linalg.mat_mul(linalg.mat_mul(u, base), linalg.mat_inverse(u, ctx))
    return LocalDatum(ctx, tuple(tuple(r) for r in mat), norm)
