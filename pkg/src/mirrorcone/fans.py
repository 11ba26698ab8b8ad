"""Regular subdivisions induced by the weight vector, and the fan conditions.

The projected configuration consists of the images of the distinguished
lattice points under the per-block coordinate projection, plus the origin.
A weight vector lifts the configuration; the cells of the subdivision are the
projections of the lower faces of the lifted point set, found by pivoting
from an initial lowest face across ridges.  All arithmetic is exact rational;
each cell carries the affine functional certifying it (equality on the cell,
strictly below the heights elsewhere).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import random

from .intlat import (
    det_fraction,
    fraction_matrix_rank,
    hnf_canonicalize,
    smith_normal_form,
    solve_fraction_system,
    solve_int,
)
from .toricdata import ValidatedToricData

ORIGIN = "origin"


class FanError(ValueError):
    pass


class DegenerateConfig(FanError):
    pass


class CellLiftFailure(FanError):
    def __init__(self, cell, reason):
        super().__init__(f"cell {tuple(sorted(cell))}: {reason}")
        self.cell = tuple(sorted(cell))
        self.reason = reason


def point_id(p):
    return ",".join(str(x) for x in p)


@dataclass(frozen=True)
class ProjectedConfig:
    dim: int
    ids: tuple[str, ...]                 # origin first, then Xi_0 in lex order
    coords: dict                         # id -> tuple of ints (projected)
    lifts: dict                          # id -> canonical lift in Z^I
    kept: tuple[int, ...]                # ambient indices kept by the projection
    dropped: tuple[int, ...]             # per block, the dropped index
    vt: ValidatedToricData

    def project(self, x):
        out = []
        for k in self.kept:
            j = self.vt.block_of(k)
            out.append(x[k] - x[self.dropped[j]])
        return tuple(out)

    def pullback_functional(self, a, c):
        """Coefficients of (a, c) composed with the projection, on R^I."""
        n = self.vt.n
        coeff = [Fraction(0)] * n
        for pos, k in enumerate(self.kept):
            coeff[k] += a[pos]
            j = self.vt.block_of(k)
            coeff[self.dropped[j]] -= a[pos]
        return tuple(coeff), Fraction(c)


def project_config(vt: ValidatedToricData) -> ProjectedConfig:
    dropped = tuple(max(blk) for blk in vt.blocks)
    kept = tuple(i for i in range(vt.n) if i not in set(dropped))
    coords = {}
    lifts = {}
    ids = [ORIGIN]
    coords[ORIGIN] = (0,) * len(kept)
    lifts[ORIGIN] = (0,) * vt.n
    cfg = ProjectedConfig(dim=len(kept), ids=(), coords=coords, lifts=lifts,
                          kept=kept, dropped=dropped, vt=vt)
    for p in vt.xi0:
        pid = point_id(p)
        ids.append(pid)
        coords[pid] = cfg.project(p)
        for blk in vt.blocks:
            assert min(p[i] for i in blk) == 0, "Xi_0 point without block zero"
        lifts[pid] = p
    return ProjectedConfig(dim=len(kept), ids=tuple(ids), coords=coords,
                           lifts=lifts, kept=kept, dropped=dropped, vt=vt)


def resolve_weights(cfg: ProjectedConfig, weights) -> dict:
    """Heights keyed by point id; the origin is pinned at 0."""
    if weights is None:
        raise FanError("no weight vector supplied")
    out = {ORIGIN: Fraction(0)}
    for pid in cfg.ids:
        if pid == ORIGIN:
            continue
        p = cfg.lifts[pid]
        if isinstance(weights, dict):
            key = tuple(p)
            if key not in weights:
                raise FanError(f"no weight supplied for {key}")
            lam = Fraction(weights[key])
        else:
            lam = Fraction(weights)
        if lam <= 0:
            raise FanError("weights must be positive")
        out[pid] = lam
    return out


@dataclass(frozen=True)
class Subdivision:
    cells: tuple[tuple[str, ...], ...]   # sorted id tuples, sorted overall
    supports: dict                       # cell tuple -> (a: tuple[Fraction], c: Fraction)
    weights: dict                        # id -> Fraction
    perturbed: bool = False

    def cell_count(self):
        return len(self.cells)

    def is_triangulation(self, dim):
        return all(len(c) == dim + 1 for c in self.cells)


def _int_rank(rows):
    """Rank of a matrix with integer entries, fraction-free."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                x, y = pr[col], rows[i][col]
                rows[i] = [x * b - y * a for a, b in zip(pr, rows[i])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_rows(rows):
    if all(isinstance(x, int) for row in rows for x in row):
        return _int_rank(rows)
    return fraction_matrix_rank(rows)


def _int_det(rows):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _hyperplane_normal(dirs, dim):
    """Normal to dim-1 direction vectors spanning a hyperplane, else None.

    For integer rows the normal is the vector of signed maximal minors
    (exact, fraction-free); it vanishes exactly when the rank drops.
    Callers pass exactly dim-1 rows.
    """
    if dim == 1:
        return (1,)
    if all(isinstance(x, int) for row in dirs for x in row):
        g = []
        for k in range(dim):
            minor = [[row[j] for j in range(dim) if j != k] for row in dirs]
            g.append((-1) ** k * _int_det(minor))
        if not any(g):
            return None
        return tuple(g)
    if _rank_rows(dirs) != dim - 1:
        return None
    normals = _nullspace(dirs, dim)
    return normals[0] if len(normals) == 1 else None


def _affine_rank(points):
    if not points:
        return -1
    base = points[0]
    dirs = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    return _rank_rows(dirs)


def _nullspace(rows, dim):
    """Basis of {g in Q^dim : <g, row> = 0 for all rows} (Gaussian elimination)."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(dim):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    basis = []
    free = [c for c in range(dim) if c not in pivots]
    for fcol in free:
        vec = [Fraction(0)] * dim
        vec[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = -a[i][fcol]
        basis.append(tuple(vec))
    return basis


def _lower_hull_cells(points, heights):
    """Maximal cells of the regular subdivision of a full-dimensional config.

    ``points``: list of coordinate tuples; ``heights``: parallel list of
    Fractions.  Returns a list of (frozenset of indices, (a, c)) where the
    affine functional a.x + c equals the height exactly on the cell and is
    strictly below it elsewhere.
    """
    npts = len(points)
    dim = len(points[0])
    if _affine_rank(points) != dim:
        raise DegenerateConfig("configuration does not span its ambient space")

    def evaluate(a, c, i):
        return sum(ai * xi for ai, xi in zip(a, points[i])) + c

    def contact_set(a, c):
        out = set()
        for i in range(npts):
            s = heights[i] - evaluate(a, c, i)
            if s < 0:
                return None
            if s == 0:
                out.add(i)
        return frozenset(out)

    def rotate_to_facet(a, c):
        """Grow the contact set of a supporting functional to full dimension."""
        while True:
            contact = contact_set(a, c)
            assert contact is not None
            cpts = [points[i] for i in sorted(contact)]
            if _affine_rank(cpts) == dim:
                return a, c, contact
            base = cpts[0]
            dirs = [tuple(Fraction(x - y) for x, y in zip(p, base)) for p in cpts[1:]]
            beta = _nullspace(dirs, dim)[0]

            def bval(i):
                return sum(b * (x - y) for b, x, y in zip(beta, points[i], base))

            slack = [heights[i] - evaluate(a, c, i) for i in range(npts)]
            tplus = [(slack[i] / bval(i), i) for i in range(npts) if bval(i) > 0]
            tminus = [(slack[i] / bval(i), i) for i in range(npts) if bval(i) < 0]
            if tplus:
                t = min(x for x, _ in tplus)
            else:
                t = max(x for x, _ in tminus)
            a = tuple(ai + t * bi for ai, bi in zip(a, beta))
            c = c - t * sum(b * y for b, y in zip(beta, base))

    def cell_ridges(cell):
        """Facets of the cell polytope: (ridge index set, outward beta).

        Candidate subsets already contained in a found ridge are skipped,
        which keeps the scan near-linear for the large cells of degenerate
        weight vectors.
        """
        idx = sorted(cell)
        cpts = {i: points[i] for i in idx}
        seen = {}
        for sub in combinations(idx, dim):
            if any(set(sub) <= ridge for ridge in seen):
                continue
            base = points[sub[0]]
            dirs = [tuple(x - y for x, y in zip(points[i], base))
                    for i in sub[1:]]
            g = _hyperplane_normal(dirs, dim)
            if g is None:
                continue
            g0 = sum(gi * xi for gi, xi in zip(g, base))
            vals = {i: sum(gi * xi for gi, xi in zip(g, cpts[i])) for i in idx}
            if all(v <= g0 for v in vals.values()):
                pass
            elif all(v >= g0 for v in vals.values()):
                g = tuple(-x for x in g)
                g0 = -g0
                vals = {i: -v for i, v in vals.items()}
            else:
                continue
            ridge = frozenset(i for i in idx if vals[i] == g0)
            if ridge in seen:
                continue
            rpts = [points[i] for i in sorted(ridge)]
            if _affine_rank(rpts) != dim - 1:
                continue
            seen[ridge] = (g, g0)
        return seen

    def neighbor(a, c, ridge, g, g0):
        """Rotate the supporting functional around a ridge; None at the boundary."""
        base_val = g0

        def bval(i):
            return sum(gi * xi for gi, xi in zip(g, points[i])) - base_val

        slack = [heights[i] - evaluate(a, c, i) for i in range(npts)]
        candidates = [(slack[i] / bval(i), i) for i in range(npts) if bval(i) > 0]
        if not candidates:
            return None
        t = min(x for x, _ in candidates)
        a2 = tuple(ai + t * gi for ai, gi in zip(a, g))
        c2 = c - t * base_val
        contact = contact_set(a2, c2)
        assert contact is not None and contact >= ridge
        return a2, c2, contact

    start = min(range(npts), key=lambda i: (heights[i],) + tuple(points[i]))
    a0 = (Fraction(0),) * dim
    c0 = heights[start]
    a, c, first = rotate_to_facet(a0, c0)
    cells = {first: (a, c)}
    queue = [first]
    while queue:
        cell = queue.pop()
        a, c = cells[cell]
        for ridge, (g, g0) in cell_ridges(cell).items():
            # rotate away from the cell: flip so the cell is on the negative side
            inner = [i for i in cell if i not in ridge]
            gv = sum(gi * xi for gi, xi in zip(g, points[next(iter(inner))])) - g0
            if gv > 0:
                g = tuple(-x for x in g)
                g0 = -g0
            res = neighbor(a, c, ridge, g, g0)
            if res is None:
                continue
            a2, c2, contact = res
            if contact not in cells:
                cells[contact] = (a2, c2)
                queue.append(contact)
    return [(cell, func) for cell, func in cells.items()]


def regular_subdivision(cfg: ProjectedConfig, weights, perturb_seed=None) -> Subdivision:
    """The regular subdivision of the configuration induced by the weights.

    With ``perturb_seed`` given, non-simplicial cells are refined by the
    infinitesimal lexicographic perturbation (indicator heights applied point
    by point, in seed-shuffled id order); supports of refined cells are those
    of their parent cell and the result is flagged ``perturbed``.
    """
    heights_by_id = resolve_weights(cfg, weights)
    ids = list(cfg.ids)
    points = [cfg.coords[pid] for pid in ids]
    heights = [heights_by_id[pid] for pid in ids]
    raw = _lower_hull_cells(points, heights)
    cells = {}
    for cell, func in raw:
        key = tuple(sorted(ids[i] for i in cell))
        cells[key] = func
    if perturb_seed is None:
        ordered = tuple(sorted(cells))
        return Subdivision(cells=ordered,
                           supports={k: cells[k] for k in ordered},
                           weights=heights_by_id)

    order = ids[:]
    random.Random(perturb_seed).shuffle(order)
    work = {key: cells[key] for key in cells}
    for q in order:
        next_work = {}
        for key, func in work.items():
            if len(key) == cfg.dim + 1 or q not in key:
                next_work[key] = func
                continue
            sub_ids = list(key)
            sub_pts = [cfg.coords[pid] for pid in sub_ids]
            sub_h = [Fraction(1 if pid == q else 0) for pid in sub_ids]
            for sub_cell, _ in _lower_hull_cells(sub_pts, sub_h):
                sub_key = tuple(sorted(sub_ids[i] for i in sub_cell))
                next_work[sub_key] = func
        work = next_work
    if any(len(k) != cfg.dim + 1 for k in work):
        raise FanError("lexicographic perturbation did not reach a triangulation")
    ordered = tuple(sorted(work))
    return Subdivision(cells=ordered, supports={k: work[k] for k in ordered},
                       weights=heights_by_id, perturbed=True)


@dataclass(frozen=True)
class ConditionReport:
    mpcp: bool
    mpcs: bool | None
    is_triangulation: bool
    refines_product_fan: bool
    rays_are_xi0: bool
    failures: tuple

    def to_json(self):
        return {
            "mpcp": self.mpcp,
            "mpcs": self.mpcs,
            "is_triangulation": self.is_triangulation,
            "refines_product_fan": self.refines_product_fan,
            "rays_are_xi0": self.rays_are_xi0,
            "failures": [[list(cell), reason] for cell, reason in self.failures],
        }


def _cell_block_supports(cfg, cell):
    """Per block, the set of indices hit by the canonical lifts of the cell."""
    vt = cfg.vt
    out = []
    for blk in vt.blocks:
        hit = set()
        for pid in cell:
            if pid == ORIGIN:
                continue
            lift = cfg.lifts[pid]
            hit.update(i for i in blk if lift[i] != 0)
        out.append(hit)
    return out


def check_mpcp(sub: Subdivision, cfg: ProjectedConfig) -> ConditionReport:
    vt = cfg.vt
    failures = []
    is_tri = True
    for cell in sub.cells:
        if len(cell) != cfg.dim + 1:
            is_tri = False
            failures.append((cell, "cell is not a simplex"))
    used = set()
    for cell in sub.cells:
        used.update(cell)
    missing = [pid for pid in cfg.ids if pid != ORIGIN and pid not in used]
    rays_ok = not missing
    for pid in missing:
        failures.append(((pid,), "point is not a vertex of the subdivision"))
    refines = True
    for cell in sub.cells:
        supports = _cell_block_supports(cfg, cell)
        for j, hit in enumerate(supports):
            if len(hit) >= len(vt.blocks[j]):
                refines = False
                failures.append(
                    (cell, f"block {j} support does not omit an index"))
    mpcp = is_tri and rays_ok and refines
    return ConditionReport(mpcp=mpcp, mpcs=None, is_triangulation=is_tri,
                           refines_product_fan=refines, rays_are_xi0=rays_ok,
                           failures=tuple(failures))


def lattice_m_basis(cfg: ProjectedConfig):
    """Basis of M = image of M_bar under the projection, in kept coordinates."""
    rows = [cfg.project(row) for row in cfg.vt.m_bar.basis]
    return hnf_canonicalize(rows, cfg.dim)


def check_mpcs(sub: Subdivision, cfg: ProjectedConfig,
               mpcp_report: ConditionReport | None = None) -> ConditionReport:
    """Boundary-relevant cones (block supports omitting two indices per block)
    must be unimodular with respect to the lattice M."""
    if mpcp_report is None:
        mpcp_report = check_mpcp(sub, cfg)
    vt = cfg.vt
    m_basis = lattice_m_basis(cfg)
    failures = list(mpcp_report.failures)
    checked = set()
    bad = []

    def check_gens(gens):
        coords = []
        for pid in gens:
            sol = solve_int(m_basis, cfg.coords[pid])
            assert sol is not None, "Xi_0 projection escaped M"
            coords.append(tuple(sol))
        diag = smith_normal_form(coords)
        if any(d != 1 for d in diag) or len(diag) != len(gens):
            bad.append(tuple(sorted(gens)))

    def grow(gens, supports, pool):
        # boundary relevance (two omitted indices per block) is monotone
        # decreasing as generators are added, so failing branches are pruned
        if gens:
            key = frozenset(gens)
            if key not in checked:
                checked.add(key)
                check_gens(gens)
        for k, pid in enumerate(pool):
            lift = cfg.lifts[pid]
            new_supports = []
            ok = True
            for j, blk in enumerate(vt.blocks):
                hit = supports[j] | {i for i in blk if lift[i] != 0}
                if len(blk) - len(hit) < 2:
                    ok = False
                    break
                new_supports.append(hit)
            if ok:
                grow(gens + [pid], new_supports, pool[k + 1:])

    for cell in sub.cells:
        gens_all = sorted(pid for pid in cell if pid != ORIGIN)
        grow([], [set() for _ in vt.blocks], gens_all)
    for gens in sorted(set(bad)):
        failures.append((gens, "boundary-relevant cone not unimodular"))
    mpcs = mpcp_report.mpcp and not bad
    return ConditionReport(mpcp=mpcp_report.mpcp, mpcs=mpcs,
                           is_triangulation=mpcp_report.is_triangulation,
                           refines_product_fan=mpcp_report.refines_product_fan,
                           rays_are_xi0=mpcp_report.rays_are_xi0,
                           failures=tuple(failures))


@dataclass(frozen=True)
class LiftedCell:
    cell: tuple[str, ...]
    vertices: tuple[tuple[int, ...], ...]
    support_ok: bool
    simplex_ok: bool
    slice_ok: bool


@dataclass(frozen=True)
class LiftedSubdivision:
    cells: tuple[LiftedCell, ...]

    def all_pass(self):
        return all(c.support_ok and c.simplex_ok and c.slice_ok for c in self.cells)


def _barycentric_membership(vertices, x):
    """x in conv(vertices) for affinely independent vertices, exactly."""
    n = len(x)
    rows = [[Fraction(v[i]) for v in vertices] for i in range(n)]
    rows.append([Fraction(1)] * len(vertices))
    sol = solve_fraction_system(rows, [Fraction(xi) for xi in x] + [Fraction(1)])
    if sol is None:
        return False
    # underdetermined systems cannot occur: the vertices are affinely independent
    return all(t >= 0 for t in sol)


def lift_subdivision(sub: Subdivision, cfg: ProjectedConfig,
                     threads=1) -> LiftedSubdivision:
    """Lift each cell to the degree-one slice and certify the lift.

    Certificates per cell: the pulled-back functional supports the lifted
    configuration exactly on the lifted vertex set; the vertex set is affinely
    independent; every degree-one lattice point projecting into the cell lies
    in the convex hull of the lifted vertices.  A failed certificate raises
    CellLiftFailure (it falsifies the lifting lemma for this input, which for
    an MPCP subdivision means a bug).
    """
    vt = cfg.vt
    block_vectors = [vt.block_vector(j) for j in range(vt.r)]
    lifted_config = [(pid, cfg.lifts[pid]) for pid in cfg.ids if pid != ORIGIN]

    def lift_cell(cell):
        a, c = sub.supports[cell]
        vertices = [cfg.lifts[pid] for pid in cell if pid != ORIGIN]
        if ORIGIN in cell:
            vertices.extend(block_vectors)
        vertices = [tuple(v) for v in vertices]
        coeff, const = cfg.pullback_functional(a, c)

        def bar_height(x, is_block):
            return Fraction(0) if is_block else sub.weights[point_id(x)]

        support_ok = True
        in_cell = {pid for pid in cell}
        for pid, x in lifted_config:
            val = sum(ci * xi for ci, xi in zip(coeff, x)) + const
            h = sub.weights[pid]
            if pid in in_cell:
                support_ok = support_ok and val == h
            else:
                support_ok = support_ok and val < h
        for bv in block_vectors:
            val = sum(ci * xi for ci, xi in zip(coeff, bv)) + const
            if ORIGIN in cell:
                support_ok = support_ok and val == 0
            else:
                support_ok = support_ok and val < 0

        simplex_ok = _affine_rank(vertices) == len(vertices) - 1

        slice_ok = True
        if simplex_ok:
            cell_pts = [cfg.coords[pid] for pid in cell]
            for xi_pt in vt.xi:
                proj = cfg.project(xi_pt)
                if _barycentric_membership(cell_pts, proj):
                    if not _barycentric_membership(vertices, xi_pt):
                        slice_ok = False
        else:
            slice_ok = False
        return LiftedCell(cell=cell, vertices=tuple(vertices),
                          support_ok=support_ok, simplex_ok=simplex_ok,
                          slice_ok=slice_ok)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lift_cell, sub.cells))
    else:
        results = [lift_cell(cell) for cell in sub.cells]
    for res in results:
        if not (res.support_ok and res.simplex_ok and res.slice_ok):
            raise CellLiftFailure(res.cell, _lift_reason(res))
    return LiftedSubdivision(cells=tuple(results))


def _lift_reason(res):
    if not res.support_ok:
        return "pulled-back functional does not support the lifted configuration"
    if not res.simplex_ok:
        return "lifted vertex set is affinely dependent"
    return "a degree-one lattice point escapes the lifted hull"


@dataclass(frozen=True)
class SingularityCertificate:
    certified: bool
    links: tuple  # (name, ok, detail)
    failing_link: str | None

    def to_json(self):
        return {
            "certified": self.certified,
            "failing_link": self.failing_link,
            "links": [[name, ok, detail] for name, ok, detail in self.links],
        }


def certify_isolated_singularity(vt: ValidatedToricData, weights,
                                 threads=1) -> SingularityCertificate:
    """Run the full chain: MPCP, lifted triangulation, coordinate slices.

    The restriction of a triangulation by nonnegative lattice simplices to a
    coordinate subspace is the subcomplex of faces supported there, so the
    last link only records the nonnegativity of the lifted vertices; a failed
    earlier link is reported as the failing link with a negative certificate.
    """
    cfg = project_config(vt)
    links = []
    sub = regular_subdivision(cfg, weights)
    report = check_mpcp(sub, cfg)
    links.append(("mpcp", report.mpcp,
                  f"{len(sub.cells)} cells; failures: {len(report.failures)}"))
    if not report.mpcp:
        return SingularityCertificate(False, tuple(links), "mpcp")
    try:
        lifted = lift_subdivision(sub, cfg, threads=threads)
        links.append(("lifted_triangulation", True,
                      f"{len(lifted.cells)} simplices certified"))
    except CellLiftFailure as exc:
        links.append(("lifted_triangulation", False, str(exc)))
        return SingularityCertificate(False, tuple(links), "lifted_triangulation")
    nonneg = all(all(x >= 0 for x in v)
                 for cell in lifted.cells for v in cell.vertices)
    links.append(("coordinate_slices", nonneg,
                  "restrictions to coordinate subspaces are face subcomplexes"))
    if not nonneg:
        return SingularityCertificate(False, tuple(links), "coordinate_slices")
    return SingularityCertificate(True, tuple(links), None)


def pulling_triangulation(points):
    """Index simplices of a triangulation of conv(points) (pulling at lex-min).

    ``points`` must affinely span their ambient space.  Used by the volume
    conservation checks; interior points other than the pulled vertex are not
    used as simplex vertices.
    """
    dim = len(points[0])
    idx = list(range(len(points)))
    return _pull(points, idx, dim)


def _pull(points, idx, dim):
    pts = [points[i] for i in idx]
    if len(idx) == dim + 1:
        return [tuple(idx)]
    v0 = min(range(len(idx)), key=lambda k: pts[k])
    simplices = []
    facets = _facets(pts, dim)
    for contact, (g, g0) in facets.items():
        if v0 in contact:
            continue
        # project the facet along a coordinate where its normal is nonzero
        drop = next(k for k in range(dim) if g[k] != 0)
        sub_idx = sorted(contact)
        sub_pts = [tuple(x for k, x in enumerate(pts[i]) if k != drop)
                   for i in sub_idx]
        for simplex in _pull(sub_pts, list(range(len(sub_idx))), dim - 1):
            simplices.append(tuple([idx[v0]] + [idx[sub_idx[s]] for s in simplex]))
    return simplices


def _facets(pts, dim):
    if dim == 0:
        return {}
    facets = {}
    for sub in combinations(range(len(pts)), dim):
        if any(set(sub) <= contact for contact in facets):
            continue
        base = pts[sub[0]]
        dirs = [tuple(x - y for x, y in zip(pts[i], base)) for i in sub[1:]]
        g = _hyperplane_normal(dirs, dim)
        if g is None:
            continue
        g0 = sum(gi * xi for gi, xi in zip(g, base))
        vals = [sum(gi * xi for gi, xi in zip(g, p)) for p in pts]
        if all(v <= g0 for v in vals):
            pass
        elif all(v >= g0 for v in vals):
            g = tuple(-x for x in g)
            g0 = -g0
            vals = [-v for v in vals]
        else:
            continue
        contact = frozenset(i for i, v in enumerate(vals) if v == g0)
        sub_pts = [pts[i] for i in contact]
        if _affine_rank(sub_pts) == dim - 1:
            facets.setdefault(contact, (g, g0))
    return facets


def normalized_volume(points, simplices=None):
    """dim! times the Euclidean volume of conv(points), exact."""
    if simplices is None:
        simplices = pulling_triangulation(points)
    total = Fraction(0)
    for simplex in simplices:
        base = points[simplex[0]]
        rows = [[Fraction(x - y) for x, y in zip(points[i], base)]
                for i in simplex[1:]]
        total += abs(det_fraction(rows))
    return total


def subdivision_volume(sub: Subdivision, cfg: ProjectedConfig):
    """Sum of normalized cell volumes (cells triangulated independently)."""
    total = Fraction(0)
    for cell in sub.cells:
        pts = [cfg.coords[pid] for pid in cell]
        total += normalized_volume(pts)
    return total
