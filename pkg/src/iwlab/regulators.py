"""Hom-space regulator determinants: realizations of irreducible characters,
bases of equivariant map spaces, the determinant of post-composition by an
equivariant map, and its invariance along the tower levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .characters import Character, character_table, induce, inner_product
from .groups import FiniteGroup, SubgroupDesc
from .padic import CycloPadic, PrecisionContext
from .tower import ArtinCharacter, LieTower, PermutationModule, xy_modules


class KernelConditionError(ArithmeticError):
    """The supplied map is not an isomorphism on the chi-part."""


@dataclass(frozen=True)
class RepresentationModule:
    """Explicit action matrices over the cyclotomic scalar field."""

    group: FiniteGroup
    matrices: tuple  # one square matrix per group element

    def __post_init__(self):
        g = self.group
        if len(self.matrices) != g.n:
            raise ValueError("one matrix per group element required")
        dim = self.dim
        for mat in self.matrices:
            if len(mat) != dim or any(len(r) != dim for r in mat):
                raise ValueError("ragged action matrix")
        # the action respects a generating set of the multiplication table
        for a in g.generators:
            for b in range(g.n):
                left = linalg.mat_mul(self.matrices[a], self.matrices[b])
                target = self.matrices[g.table[a][b]]
                if not _mat_equals(left, target):
                    raise ValueError("matrices do not satisfy the multiplication table")

    @property
    def dim(self) -> int:
        return len(self.matrices[0])

    @property
    def ctx(self) -> PrecisionContext:
        return self.matrices[0][0][0].ctx

    def character(self) -> Character:
        g = self.group
        vals = []
        for k in range(g.num_classes):
            mat = self.matrices[g.class_rep(k)]
            acc = mat[0][0]
            for i in range(1, len(mat)):
                acc = acc + mat[i][i]
            vals.append(acc)
        return Character(g, tuple(vals))

    def direct_sum(self, other: "RepresentationModule") -> "RepresentationModule":
        if self.group is not other.group:
            raise ValueError("mixed groups")
        ctx = self.ctx
        z = ctx.zero()
        mats = []
        for a, b in zip(self.matrices, other.matrices):
            n, m = len(a), len(b)
            rows = [list(r) + [z] * m for r in a]
            rows += [[z] * n + list(r) for r in b]
            mats.append(tuple(tuple(r) for r in rows))
        return RepresentationModule(self.group, tuple(mats))

    def tensor_linear(self, lam: Character) -> "RepresentationModule":
        mats = []
        for s in range(self.group.n):
            c = lam.value(s)
            mats.append(tuple(tuple(x * c for x in row) for row in self.matrices[s]))
        return RepresentationModule(self.group, tuple(mats))


def _mat_equals(a, b) -> bool:
    return all(x.equals(y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def permutation_representation(module: PermutationModule, ctx: PrecisionContext) -> RepresentationModule:
    mats = []
    one, zero = ctx.one(), ctx.zero()
    for s in range(module.group.n):
        ints = module.action_matrix(s)
        mats.append(tuple(tuple(one if v else zero for v in row) for row in ints))
    return RepresentationModule(module.group, tuple(mats))


def x_representation(module: PermutationModule, ctx: PrecisionContext) -> RepresentationModule:
    """Action on the augmentation kernel in the e_i - e_0 basis."""
    mats = []
    for s in range(module.group.n):
        ints = module.x_action_matrix(s)
        mats.append(tuple(tuple(ctx.make(v) for v in row) for row in ints))
    return RepresentationModule(module.group, tuple(mats))


def irreducible_representation(chi: Character, order_bound: int = 200) -> RepresentationModule:
    """Realize an irreducible character with explicit matrices: linear directly,
    else a monomial induction from a linear character of a subgroup, else a
    multiplicity-one summand of a coset permutation module, else a twist of one
    of those by a linear character."""
    if not chi.is_irreducible():
        raise ValueError("only irreducible characters are realized")
    g = chi.group
    ctx = chi.ctx
    d = chi.degree_int()
    if d == 1:
        return RepresentationModule(g, tuple(((chi.value(s),),) for s in range(g.n)))
    mono = _monomial_realization(chi, order_bound)
    if mono is not None:
        return mono
    perm = _permutation_summand_realization(chi, order_bound)
    if perm is not None:
        return perm
    table = character_table(g, ctx, order_bound)
    linears = [c for c in table if c.degree_int() == 1]
    for mu in linears[1:]:
        base = chi * mu.dual()
        for cand in (lambda: _monomial_realization(base, order_bound), lambda: _permutation_summand_realization(base, order_bound)):
            got = cand()
            if got is not None:
                return got.tensor_linear(mu)
    raise ValueError("no realization found in the catalog; supply matrices explicitly")


def _monomial_realization(chi: Character, order_bound: int):
    g = chi.group
    ctx = chi.ctx
    d = chi.degree_int()
    for elems in g.subgroup_classes:
        if len(elems) * d != g.n:
            continue
        sub = SubgroupDesc(g, elems)
        htable = character_table(sub.as_group, ctx, order_bound)
        for lam in htable:
            if lam.degree_int() != 1:
                continue
            if induce(lam, sub).equals(chi):
                return _induced_rep(lam, sub)
    return None


def _induced_rep(lam: Character, sub: SubgroupDesc) -> RepresentationModule:
    g = sub.parent
    ctx = lam.ctx
    # left transversal, deterministic
    reps = []
    seen = set()
    for x in range(g.n):
        if x not in seen:
            coset = {g.table[x][h] for h in sub.elements}
            seen.update(coset)
            reps.append(x)
    k = len(reps)
    coset_of = {}
    for i, r in enumerate(reps):
        for h in sub.elements:
            coset_of[g.table[r][h]] = i
    zero = ctx.zero()
    mats = []
    for s in range(g.n):
        mat = [[zero] * k for _ in range(k)]
        for i, r in enumerate(reps):
            sr = g.table[s][r]
            j = coset_of[sr]
            h = g.table[g.inv[reps[j]]][sr]
            mat[j][i] = lam.value(sub.from_parent[h])
        mats.append(tuple(tuple(row) for row in mat))
    return RepresentationModule(g, tuple(mats))


def _permutation_summand_realization(chi: Character, order_bound: int):
    g = chi.group
    ctx = chi.ctx
    for elems in g.subgroup_classes:
        sub = SubgroupDesc(g, elems)
        # permutation character value = fixed cosets; multiplicity of chi must be 1
        perm_mats = _coset_perm_mats(sub, ctx)
        traces = []
        for kcls in range(g.num_classes):
            mat = perm_mats[g.class_rep(kcls)]
            acc = mat[0][0]
            for i in range(1, len(mat)):
                acc = acc + mat[i][i]
            traces.append(acc)
        perm_char = Character(g, tuple(traces))
        ip = inner_product(chi, perm_char)
        if ip.is_rational() and ip.rational_value() == 1:
            proj = _idempotent_action(chi, perm_mats)
            basis = linalg.column_space_basis(proj, ctx)
            cols = [list(col) for col in basis]
            bmat = [[cols[j][i] for j in range(len(cols))] for i in range(len(proj))]
            mats = []
            for s in range(g.n):
                img = linalg.mat_mul(perm_mats[s], bmat)
                coords = _coords_in_columns(bmat, img, ctx)
                mats.append(tuple(tuple(row) for row in coords))
            return RepresentationModule(g, tuple(mats))
    return None


def _coset_perm_mats(sub: SubgroupDesc, ctx: PrecisionContext):
    g = sub.parent
    seen = set()
    cosets = []
    for x in range(g.n):
        if x not in seen:
            cs = frozenset(g.table[x][h] for h in sub.elements)
            seen.update(cs)
            cosets.append(cs)
    index = {cs: i for i, cs in enumerate(cosets)}
    one, zero = ctx.one(), ctx.zero()
    mats = []
    for s in range(g.n):
        mat = [[zero] * len(cosets) for _ in range(len(cosets))]
        for i, cs in enumerate(cosets):
            img = frozenset(g.table[s][x] for x in cs)
            mat[index[img]][i] = one
        mats.append(mat)
    return mats


def _idempotent_action(chi: Character, mats):
    g = chi.group
    ctx = chi.ctx
    n = len(mats[0])
    acc = [[ctx.zero()] * n for _ in range(n)]
    scale = Fraction(chi.degree_int(), g.n)
    for s in range(g.n):
        c = chi.value(g.inv[s]) * scale
        if c.is_exact_zero():
            continue
        mat = mats[s]
        for i in range(n):
            row = mat[i]
            for j in range(n):
                if not row[j].is_exact_zero():
                    acc[i][j] = acc[i][j] + c * row[j]
    return acc


def _coords_in_columns(bmat, img, ctx):
    """Solve bmat * X = img column by column (bmat has full column rank)."""
    k = len(bmat[0])
    out_cols = []
    for j in range(len(img[0])):
        rhs = [img[i][j] for i in range(len(img))]
        sol = linalg.solve(bmat, rhs, ctx)
        if sol is None:
            raise AssertionError("image left the invariant subspace")
        out_cols.append(sol)
    return [[out_cols[j][i] for j in range(len(out_cols))] for i in range(k)]


# -- hom spaces and the regulator ---------------------------------------------------


def hom_basis(v: RepresentationModule, m: RepresentationModule):
    """Deterministic basis of the equivariant maps V -> M (matrices dim_M x dim_V)."""
    if v.group is not m.group:
        raise ValueError("mixed groups")
    g = v.group
    ctx = v.ctx
    dv, dm = v.dim, m.dim
    rows = []
    for s in g.generators:
        a = m.matrices[s]
        b = v.matrices[s]
        # f b = a f: unknowns f[i][j] flattened
        for i in range(dm):
            for j in range(dv):
                row = [ctx.zero()] * (dm * dv)
                for t in range(dv):
                    row[i * dv + t] = row[i * dv + t] + b[t][j]
                for t in range(dm):
                    row[t * dv + j] = row[t * dv + j] - a[i][t]
                rows.append(row)
    null = linalg.kernel_basis(rows, ctx)
    return [
        [[vec[i * dv + j] for j in range(dv)] for i in range(dm)]
        for vec in null
    ]


@dataclass(frozen=True)
class RegulatorProblem:
    """chi-part determinant data: V affords chi, f: M -> M2 equivariant."""

    group: FiniteGroup
    chi: Character
    v_rep: RepresentationModule
    m: RepresentationModule
    m2: RepresentationModule
    f: tuple  # matrix dim_m2 x dim_m

    def __post_init__(self):
        if not self.chi.is_irreducible():
            raise ValueError("regulators are attached to irreducible characters")
        if not self.v_rep.character().equals(self.chi):
            raise ValueError("v_rep does not afford chi")
        for s in self.group.generators:
            lhs = linalg.mat_mul([list(r) for r in self.f], self.m.matrices[s])
            rhs = linalg.mat_mul(self.m2.matrices[s], [list(r) for r in self.f])
            if not _mat_equals(lhs, rhs):
                raise ValueError("f is not equivariant")


def regulator_det(problem: RegulatorProblem) -> CycloPadic:
    """Determinant of h -> f o h on Hom(V, M) in the deterministic bases."""
    ctx = problem.v_rep.ctx
    basis_m = hom_basis(problem.v_rep, problem.m)
    basis_m2 = hom_basis(problem.v_rep, problem.m2)
    if len(basis_m) != len(basis_m2):
        raise KernelConditionError("chi-multiplicities of source and target differ")
    d = len(basis_m)
    if d == 0:
        return ctx.one()  # empty determinant
    stack = [
        [basis_m2[t][i][j] for t in range(d)]
        for i in range(problem.m2.dim)
        for j in range(problem.v_rep.dim)
    ]
    cols = []
    fmat = [list(r) for r in problem.f]
    for h in basis_m:
        fh = linalg.mat_mul(fmat, h)
        rhs = [fh[i][j] for i in range(problem.m2.dim) for j in range(problem.v_rep.dim)]
        sol = linalg.solve(stack, rhs, ctx)
        if sol is None:
            raise AssertionError("composition left the hom space")
        cols.append(sol)
    mat = [[cols[j][i] for j in range(d)] for i in range(d)]
    out = linalg.det(mat, ctx)
    if not linalg.is_invertible(out):
        raise KernelConditionError("map is not an isomorphism on the chi-part")
    return out


def det_on_isotypic_part(chi: Character, m: RepresentationModule, f) -> CycloPadic:
    """det of f restricted to e(chi) M; equals regulator^chi(1) when M = M2."""
    ctx = chi.ctx
    proj = _idempotent_action(chi, [ [list(r) for r in mat] for mat in m.matrices ])
    basis = linalg.column_space_basis(proj, ctx)
    if not basis:
        return ctx.one()
    bmat = [[basis[j][i] for j in range(len(basis))] for i in range(m.dim)]
    img = linalg.mat_mul([list(r) for r in f], bmat)
    coords = _coords_in_columns(bmat, img, ctx)
    return linalg.det(coords, ctx)


def class_function_map(module_rep: RepresentationModule, coeffs) -> tuple:
    """Equivariant map sum_s c(class of s) rho(s); coeffs indexed by class."""
    g = module_rep.group
    ctx = module_rep.ctx
    n = module_rep.dim
    acc = [[ctx.zero()] * n for _ in range(n)]
    for s in range(g.n):
        c = coeffs[g.class_index[s]]
        if isinstance(c, int):
            c = ctx.make(c)
        if c.is_exact_zero():
            continue
        mat = module_rep.matrices[s]
        for i in range(n):
            for j in range(n):
                if not mat[i][j].is_exact_zero():
                    acc[i][j] = acc[i][j] + c * mat[i][j]
    return tuple(tuple(row) for row in acc)


def regulator_layer_invariance(
    tower: LieTower,
    places,
    chi: ArtinCharacter,
    level_m: int,
    class_coeffs_m,
) -> bool:
    """Compare the regulator at chi's level n with the one at level m > n for
    the canonical permutation modules and the descended test map.

    The test map at level m is sum_s c(s) rho(s) with c a class function of
    G_m; its descent along Y_m ->> Y_n is the same sum through the projection,
    so both levels carry compatible data by construction."""
    n = chi.level
    if level_m < n:
        raise ValueError("comparison level must lie above chi's level")
    ctx = tower.ctx
    y_n, _, _ = xy_modules(tower, places, n)
    y_m, _, _ = xy_modules(tower, places, level_m)
    x_n = x_representation(y_n, ctx)
    x_m = x_representation(y_m, ctx)
    g_m = tower.level(level_m).group
    proj = tower.project_map(level_m, n)
    coeffs = _expand_class_coeffs(g_m, class_coeffs_m, ctx)
    f_m = class_function_map(x_m, coeffs)
    # the same sum, pushed through the level projection: pi f_m = f_n pi
    g_n = tower.level(n).group
    f_n = [[ctx.zero()] * x_n.dim for _ in range(x_n.dim)]
    for s in range(g_m.n):
        c = coeffs[g_m.class_index[s]]
        if c.is_exact_zero():
            continue
        mat = x_n.matrices[proj[s]]
        for i in range(x_n.dim):
            for j in range(x_n.dim):
                if not mat[i][j].is_exact_zero():
                    f_n[i][j] = f_n[i][j] + c * mat[i][j]
    f_n = tuple(tuple(r) for r in f_n)
    chi_m = chi.inflate_to(level_m)
    v_n = irreducible_representation(chi.char)
    v_m = irreducible_representation(chi_m.char)
    reg_n = regulator_det(RegulatorProblem(g_n, chi.char, v_n, x_n, x_n, f_n))
    reg_m = regulator_det(RegulatorProblem(g_m, chi_m.char, v_m, x_m, x_m, f_m))
    return reg_n.equals(reg_m)


def _expand_class_coeffs(group: FiniteGroup, coeffs, ctx):
    out = []
    for c in coeffs:
        out.append(ctx.make(c) if isinstance(c, (int, Fraction)) else c)
    if len(out) != group.num_classes:
        raise ValueError("one coefficient per conjugacy class required")
    return out
