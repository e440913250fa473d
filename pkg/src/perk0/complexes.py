"""m-periodic complexes over a bound quiver algebra.

A complex is a Z/m-graded family of representations with degree-+1
differentials composing to zero.  The shift functor rotates degrees and
multiplies every differential by -1 per step, so shifting by the period m is
the identity for even m and flips all signs for odd m; that sign is the
source of all the 2-torsion phenomena downstream.

Cone convention: for f: V -> W, the cone has C^i = V^{i+1} (+) W^i with
differential  [[-d_V, 0], [f, d_W]],  which makes pi . iota = 0 strict and
cone(id) contractible.
"""

from __future__ import annotations

import hashlib
import json

from .errors import NoSolution, NotAChainMap, NotAComplex, ShapeMismatch
from .linalg import Matrix, block_matrix, kernel_basis, rank, solve
from .quiver import (
    ModuleMap,
    QuiverAlgebra,
    Representation,
    column_space_basis,
    direct_sum as rep_direct_sum,
    hom_space,
    projective_cover,
    quotient_by,
    _subrepresentation,
)


class PeriodicComplex:
    """Components indexed by Z_m with differentials d^i: V^i -> V^{i+1 mod m}."""

    __slots__ = ("algebra", "m", "components", "differentials", "_key", "_hstruct", "_ranks")

    def __init__(self, algebra: QuiverAlgebra, m: int, components, differentials):
        if m < 1:
            raise ShapeMismatch("the period m must be positive")
        components = tuple(components)
        differentials = tuple(differentials)
        if len(components) != m or len(differentials) != m:
            raise ShapeMismatch(f"need exactly {m} components and differentials")
        self.algebra = algebra
        self.m = m
        self.components = components
        self.differentials = differentials
        for i, d in enumerate(differentials):
            if d.source != components[i] or d.target != components[(i + 1) % m]:
                raise ShapeMismatch(f"differential {i} endpoints do not match the grading")
        for i in range(m):
            if not (differentials[(i + 1) % m] @ differentials[i]).is_zero():
                raise NotAComplex(i)
        self._key = None
        self._hstruct = {}
        self._ranks = None

    def component(self, i: int) -> Representation:
        return self.components[i % self.m]

    def differential(self, i: int) -> ModuleMap:
        return self.differentials[i % self.m]

    def dims(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.dims for c in self.components)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.m) if not self.components[i].is_zero())

    def is_zero(self) -> bool:
        return not self.support()

    def content_key(self):
        if self._key is None:
            self._key = (
                self.algebra.content_key(),
                self.m,
                tuple(c.content_key() for c in self.components),
                tuple(tuple(b.e for b in d.blocks) for d in self.differentials),
            )
        return self._key

    def object_id(self) -> str:
        return hashlib.sha1(repr(self.content_key()).encode()).hexdigest()[:12]

    def __eq__(self, other):
        return isinstance(other, PeriodicComplex) and self.content_key() == other.content_key()

    def __hash__(self):
        return hash(self.content_key())

    def __repr__(self):
        return f"PeriodicComplex(m={self.m}, dims={[c.dims for c in self.components]})"

    def shift(self, k: int) -> "PeriodicComplex":
        """Rotate degrees by k and scale every differential by (-1)^k."""
        m = self.m
        comps = [self.components[(i + k) % m] for i in range(m)]
        if k % 2 == 0:
            diffs = [self.differentials[(i + k) % m] for i in range(m)]
        else:
            diffs = [-self.differentials[(i + k) % m] for i in range(m)]
        return PeriodicComplex(self.algebra, m, comps, diffs)

    def vertex_rank_table(self):
        """rank of every differential block, indexed [degree][vertex]."""
        if self._ranks is None:
            self._ranks = tuple(d.vertex_ranks() for d in self.differentials)
        return self._ranks

    def to_json(self):
        return {
            "m": self.m,
            "components": [c.to_json() for c in self.components],
            "differentials": [d.to_json() for d in self.differentials],
        }

    @classmethod
    def from_json(cls, algebra: QuiverAlgebra, data) -> "PeriodicComplex":
        m = int(data["m"])
        comps = [Representation.from_json(algebra, c) for c in data["components"]]
        diffs = []
        for i, raw in enumerate(data["differentials"]):
            diffs.append(ModuleMap.from_json(comps[i], comps[(i + 1) % m], raw))
        return cls(algebra, m, comps, diffs)

    @classmethod
    def load(cls, algebra: QuiverAlgebra, path) -> "PeriodicComplex":
        with open(path) as fh:
            return cls.from_json(algebra, json.load(fh))


def make_complex(m: int, components, differentials) -> PeriodicComplex:
    """Validating constructor; rejects non-complexes with `NotAComplex`."""
    components = list(components)
    if not components:
        raise ShapeMismatch("at least one component required")
    return PeriodicComplex(components[0].algebra, m, components, differentials)


def zero_complex(algebra: QuiverAlgebra, m: int) -> PeriodicComplex:
    z = algebra.zero_module()
    return PeriodicComplex(algebra, m, [z] * m, [ModuleMap.zero(z, z)] * m)


def stalk(module: Representation, degree: int, m: int) -> PeriodicComplex:
    """The complex with ``module`` in one degree and zeros elsewhere."""
    alg = module.algebra
    z = alg.zero_module()
    comps = [z] * m
    comps[degree % m] = module
    diffs = [ModuleMap.zero(comps[i], comps[(i + 1) % m]) for i in range(m)]
    return PeriodicComplex(alg, m, comps, diffs)


def complex_direct_sum(v: PeriodicComplex, w: PeriodicComplex) -> PeriodicComplex:
    if v.m != w.m or v.algebra != w.algebra:
        raise ShapeMismatch("direct sum needs equal period and algebra")
    m = v.m
    comps = [rep_direct_sum(v.components[i], w.components[i]) for i in range(m)]
    diffs = []
    for i in range(m):
        diffs.append(_block_map(
            comps[i], comps[(i + 1) % m],
            [v.components[i], w.components[i]],
            [v.components[(i + 1) % m], w.components[(i + 1) % m]],
            {(0, 0): v.differentials[i], (1, 1): w.differentials[i]},
        ))
    return PeriodicComplex(v.algebra, m, comps, diffs)


def _block_map(src: Representation, dst: Representation, src_parts, dst_parts, blocks):
    """ModuleMap assembled from blocks keyed by (dst_part, src_part)."""
    field = src.algebra.field
    n = src.algebra.quiver.n
    out = []
    for v in range(n):
        grid = []
        for bi, dpart in enumerate(dst_parts):
            row = []
            for bj, spart in enumerate(src_parts):
                blk = blocks.get((bi, bj))
                row.append(blk.blocks[v] if blk is not None
                           else Matrix.zeros(field, dpart.dims[v], spart.dims[v]))
            grid.append(row)
        out.append(block_matrix(field, grid))
    return ModuleMap(src, dst, out, _checked=True)


class ChainMap:
    """Degreewise module maps commuting with the differentials."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: PeriodicComplex, target: PeriodicComplex, maps, _checked=False):
        if source.m != target.m or source.algebra != target.algebra:
            raise ShapeMismatch("chain map needs equal period and algebra")
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        if len(self.maps) != source.m:
            raise ShapeMismatch("one map per degree required")
        if not _checked:
            self.revalidate()

    def revalidate(self):
        m = self.source.m
        for i in range(m):
            f = self.maps[i]
            if f.source != self.source.components[i] or f.target != self.target.components[i]:
                raise ShapeMismatch(f"degree {i} map endpoints do not match")
            lhs = self.maps[(i + 1) % m] @ self.source.differentials[i]
            rhs = self.target.differentials[i] @ f
            if lhs != rhs:
                raise NotAChainMap(f"square fails at degree {i}")

    @classmethod
    def identity(cls, v: PeriodicComplex) -> "ChainMap":
        return cls(v, v, [ModuleMap.identity(c) for c in v.components], _checked=True)

    @classmethod
    def zero(cls, v: PeriodicComplex, w: PeriodicComplex) -> "ChainMap":
        return cls(v, w, [ModuleMap.zero(a, b) for a, b in zip(v.components, w.components)],
                   _checked=True)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(other.source, self.target,
                        [a @ b for a, b in zip(self.maps, other.maps)], _checked=True)

    def __add__(self, other):
        return ChainMap(self.source, self.target,
                        [a + b for a, b in zip(self.maps, other.maps)], _checked=True)

    def __sub__(self, other):
        return ChainMap(self.source, self.target,
                        [a - b for a, b in zip(self.maps, other.maps)], _checked=True)

    def __neg__(self):
        return ChainMap(self.source, self.target, [-a for a in self.maps], _checked=True)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.maps)

    def __eq__(self, other):
        return (isinstance(other, ChainMap) and self.source == other.source
                and self.target == other.target and self.maps == other.maps)


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------


class _HStructure:
    """Cohomology at one degree with enough data to induce maps: per vertex a
    kernel basis, a lift of the chosen quotient basis, and the projection from
    kernel coordinates to quotient coordinates."""

    __slots__ = ("rep", "kernel_bases", "lifts", "projections")

    def __init__(self, rep, kernel_bases, lifts, projections):
        self.rep = rep
        self.kernel_bases = kernel_bases
        self.lifts = lifts
        self.projections = projections


def _cohomology_structure(v: PeriodicComplex, i: int) -> _HStructure:
    i %= v.m
    cache = v._hstruct
    if i in cache:
        return cache[i]
    d_in = v.differentials[(i - 1) % v.m]
    d_out = v.differentials[i]
    kernel_bases = [kernel_basis(b) for b in d_out.blocks]
    ker_rep, ker_incl = _subrepresentation(v.components[i], kernel_bases)
    # Express the image of d_in inside kernel coordinates, then quotient.
    alg = v.algebra
    field = alg.field
    img_in_ker = []
    for vtx in range(alg.quiver.n):
        img = column_space_basis(d_in.blocks[vtx])
        img_in_ker.append(solve(kernel_bases[vtx], img))  # d^2 = 0 makes this solvable
    sub, sub_incl = _subrepresentation(ker_rep, img_in_ker)
    h_rep, proj = quotient_by(ker_rep, sub_incl)
    lifts = []
    for vtx in range(alg.quiver.n):
        # Column c of the lift is a vector of V^i mapping to quotient basis e_c.
        sec = solve(proj.blocks[vtx], Matrix.identity(field, h_rep.dims[vtx]))
        lifts.append(kernel_bases[vtx] @ sec)
    struct = _HStructure(h_rep, kernel_bases, lifts, [p for p in proj.blocks])
    cache[i] = struct
    return struct


def cohomology(v: PeriodicComplex, i: int) -> Representation:
    """H^i(V) = ker d^i / im d^{i-1} as a representation on chosen
    representatives; the induced arrow maps are verified by construction."""
    return _cohomology_structure(v, i).rep


def cohomology_dims(v: PeriodicComplex) -> tuple[tuple[int, ...], ...]:
    """Dimension vectors of all H^i, from ranks only (fast path)."""
    m = v.m
    ranks = v.vertex_rank_table()
    out = []
    for i in range(m):
        dims_i = v.components[i].dims
        r_out = ranks[i]
        r_in = ranks[(i - 1) % m]
        out.append(tuple(dims_i[t] - r_out[t] - r_in[t] for t in range(len(dims_i))))
    return tuple(out)


def induced_cohomology_map(f: ChainMap, i: int) -> ModuleMap:
    """H^i(f): H^i(V) -> H^i(W) on the chosen representatives."""
    sv = _cohomology_structure(f.source, i)
    sw = _cohomology_structure(f.target, i)
    field = f.source.algebra.field
    i %= f.source.m
    blocks = []
    for vtx in range(f.source.algebra.quiver.n):
        moved = f.maps[i].blocks[vtx] @ sv.lifts[vtx]
        coords = solve(sw.kernel_bases[vtx], moved)  # f maps kernels into kernels
        blocks.append(sw.projections[vtx] @ coords)
    return ModuleMap(sv.rep, sw.rep, blocks)


def is_quasi_iso(f: ChainMap) -> bool:
    """Whether the induced maps on all m cohomologies are isomorphisms."""
    for i in range(f.source.m):
        h = induced_cohomology_map(f, i)
        if h.source.dims != h.target.dims:
            return False
        if any(rank(b) != d for b, d in zip(h.blocks, h.target.dims)):
            return False
    return True


# ---------------------------------------------------------------------------
# Cones and homotopies
# ---------------------------------------------------------------------------


def cone(f: ChainMap):
    """The mapping cone with its structural maps.

    Returns ``(C, iota, pi)`` where C^i = V^{i+1} (+) W^i, iota: W -> C is the
    inclusion and pi: C -> V[1] the projection; pi @ iota == 0 holds strictly.
    """
    v, w = f.source, f.target
    m = v.m
    comps = [rep_direct_sum(v.components[(i + 1) % m], w.components[i]) for i in range(m)]
    diffs = []
    for i in range(m):
        src_parts = [v.components[(i + 1) % m], w.components[i]]
        dst_parts = [v.components[(i + 2) % m], w.components[(i + 1) % m]]
        diffs.append(_block_map(
            comps[i], comps[(i + 1) % m], src_parts, dst_parts,
            {(0, 0): -v.differentials[(i + 1) % m],
             (1, 0): f.maps[(i + 1) % m],
             (1, 1): w.differentials[i]},
        ))
    c = PeriodicComplex(v.algebra, m, comps, diffs)
    shifted = v.shift(1)
    iota_maps = []
    pi_maps = []
    for i in range(m):
        src_parts = [v.components[(i + 1) % m], w.components[i]]
        iota_maps.append(_block_map(w.components[i], comps[i], [w.components[i]], src_parts,
                                    {(1, 0): ModuleMap.identity(w.components[i])}))
        pi_maps.append(_block_map(comps[i], shifted.components[i], src_parts,
                                  [shifted.components[i]],
                                  {(0, 0): ModuleMap.identity(v.components[(i + 1) % m])}))
    iota = ChainMap(w, c, iota_maps)
    pi = ChainMap(c, shifted, pi_maps)
    return c, iota, pi


class Homotopy:
    """Maps s^i: V^i -> W^{i-1} witnessing f - g = d s + s d."""

    __slots__ = ("f", "g", "maps")

    def __init__(self, f: ChainMap, g: ChainMap, maps):
        self.f = f
        self.g = g
        self.maps = tuple(maps)

    def verify(self) -> bool:
        v, w = self.f.source, self.f.target
        m = v.m
        for i in range(m):
            lhs = self.f.maps[i] - self.g.maps[i]
            rhs = (w.differentials[(i - 1) % m] @ self.maps[i]) + \
                  (self.maps[(i + 1) % m] @ v.differentials[i])
            if lhs != rhs:
                return False
        return True


def homotopic(f: ChainMap, g: ChainMap) -> Homotopy | None:
    """Search for a homotopy between two parallel chain maps.

    Solves the linear system for the s^i in coordinates on the module Hom
    spaces; returns a verified witness, or None when the system has no
    solution (so f and g are genuinely not homotopic).
    """
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("homotopy needs parallel chain maps")
    v, w = f.source, f.target
    m = v.m
    field = v.algebra.field
    bases = [hom_space(v.components[i], w.components[(i - 1) % m]) for i in range(m)]
    offsets = []
    total = 0
    for b in bases:
        offsets.append(total)
        total += len(b)

    rows = []
    rhs_entries = []
    z = field.zero()
    for i in range(m):
        target_diff = f.maps[i] - g.maps[i]
        d_in = w.differentials[(i - 1) % m]
        d_out = v.differentials[i]
        n_entries = sum(b.rows * b.cols for b in target_diff.blocks)
        cols = {}
        for k, b in enumerate(bases[i]):
            contrib = d_in @ b
            cols[offsets[i] + k] = _flatten(contrib)
        for k, b in enumerate(bases[(i + 1) % m]):
            contrib = b @ d_out
            key = offsets[(i + 1) % m] + k
            flat = _flatten(contrib)
            if key in cols:
                cols[key] = [field.add(a, x) for a, x in zip(cols[key], flat)]
            else:
                cols[key] = flat
        flat_rhs = _flatten(target_diff)
        for r in range(n_entries):
            row = [z] * total
            for key, flat in cols.items():
                row[key] = flat[r]
            rows.append(row)
            rhs_entries.append(flat_rhs[r])
    a = Matrix._new(field, len(rows), total, tuple(tuple(r) for r in rows)) \
        if rows else Matrix.zeros(field, 0, total)
    b = Matrix.from_columns(field, [rhs_entries], len(rhs_entries))
    try:
        x = solve(a, b)
    except NoSolution:
        return None
    maps = []
    for i in range(m):
        s = ModuleMap.zero(v.components[i], w.components[(i - 1) % m])
        for k, basis_map in enumerate(bases[i]):
            cval = x.e[offsets[i] + k][0]
            if cval != 0:
                s = s + basis_map.scale(cval)
        maps.append(s)
    h = Homotopy(f, g, maps)
    if not h.verify():
        raise NoSolution("homotopy verification failed")
    return h


def _flatten(mm: ModuleMap):
    out = []
    for b in mm.blocks:
        for row in b.e:
            out.extend(row)
    return out


def chain_map_space(v: PeriodicComplex, w: PeriodicComplex) -> list[ChainMap]:
    """A basis of the space of chain maps V -> W."""
    m = v.m
    field = v.algebra.field
    bases = [hom_space(v.components[i], w.components[i]) for i in range(m)]
    offsets = []
    total = 0
    for b in bases:
        offsets.append(total)
        total += len(b)
    rows = []
    z = field.zero()
    for i in range(m):
        d_w = w.differentials[i]
        d_v = v.differentials[i]
        n_entries = sum(w.components[(i + 1) % m].dims[t] * v.components[i].dims[t]
                        for t in range(v.algebra.quiver.n))
        if n_entries == 0:
            continue
        cols = {}
        for k, b in enumerate(bases[i]):
            cols[offsets[i] + k] = _flatten(d_w @ b)
        for k, b in enumerate(bases[(i + 1) % m]):
            key = offsets[(i + 1) % m] + k
            flat = [field.neg(x) for x in _flatten(b @ d_v)]
            if key in cols:
                cols[key] = [field.add(a, x) for a, x in zip(cols[key], flat)]
            else:
                cols[key] = flat
        for r in range(n_entries):
            row = [z] * total
            for key, flat in cols.items():
                row[key] = flat[r]
            rows.append(row)
    a = Matrix._new(field, len(rows), total, tuple(tuple(r) for r in rows)) \
        if rows else Matrix.zeros(field, 0, total)
    ker = kernel_basis(a)
    out = []
    for j in range(ker.cols):
        col = ker.column(j)
        maps = []
        for i in range(m):
            f = ModuleMap.zero(v.components[i], w.components[i])
            for k, basis_map in enumerate(bases[i]):
                cval = col[offsets[i] + k]
                if cval != 0:
                    f = f + basis_map.scale(cval)
            maps.append(f)
        out.append(ChainMap(v, w, maps))
    return out


# ---------------------------------------------------------------------------
# Bounded complexes, covering and unrolling
# ---------------------------------------------------------------------------


class BoundedComplex:
    """A Z-graded complex supported on a window [lo, hi]."""

    __slots__ = ("algebra", "lo", "hi", "components", "differentials")

    def __init__(self, algebra: QuiverAlgebra, lo: int, hi: int, components, differentials):
        if lo > hi:
            raise ShapeMismatch("window must satisfy lo <= hi")
        self.algebra = algebra
        self.lo = lo
        self.hi = hi
        self.components = tuple(components)
        self.differentials = tuple(differentials)
        if len(self.components) != hi - lo + 1 or len(self.differentials) != hi - lo:
            raise ShapeMismatch("window size does not match component count")
        for j, d in enumerate(self.differentials):
            if d.source != self.components[j] or d.target != self.components[j + 1]:
                raise ShapeMismatch(f"differential at {lo + j} has wrong endpoints")
        for j in range(len(self.differentials) - 1):
            if not (self.differentials[j + 1] @ self.differentials[j]).is_zero():
                raise NotAComplex(lo + j)

    def component(self, j: int) -> Representation:
        if self.lo <= j <= self.hi:
            return self.components[j - self.lo]
        return self.algebra.zero_module()

    def differential(self, j: int) -> ModuleMap | None:
        if self.lo <= j < self.hi:
            return self.differentials[j - self.lo]
        return None

    def cohomology_dims(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for j in range(self.lo, self.hi + 1):
            dims = self.component(j).dims
            d_out = self.differential(j)
            d_in = self.differential(j - 1)
            r_out = d_out.vertex_ranks() if d_out else (0,) * len(dims)
            r_in = d_in.vertex_ranks() if d_in else (0,) * len(dims)
            out[j] = tuple(dims[t] - r_out[t] - r_in[t] for t in range(len(dims)))
        return out


def cover(b: BoundedComplex, m: int) -> PeriodicComplex:
    """Fold a bounded complex into an m-periodic one: component i is the sum
    of all B^j with j = i (mod m), with the summed differential."""
    alg = b.algebra
    classes = [[] for _ in range(m)]
    for j in range(b.lo, b.hi + 1):
        classes[j % m].append(j)
    comps = []
    parts = []
    for i in range(m):
        reps = [b.component(j) for j in classes[i]]
        parts.append(reps)
        if not reps:
            comps.append(alg.zero_module())
        else:
            total = reps[0]
            for r in reps[1:]:
                total = rep_direct_sum(total, r)
            comps.append(total)
    diffs = []
    for i in range(m):
        nxt = (i + 1) % m
        src_parts = parts[i] if parts[i] else [alg.zero_module()]
        dst_parts = parts[nxt] if parts[nxt] else [alg.zero_module()]
        src = comps[i] if parts[i] else alg.zero_module()
        blocks = {}
        for sj, j in enumerate(classes[i]):
            d = b.differential(j)
            if d is not None and (j + 1) in classes[nxt]:
                blocks[(classes[nxt].index(j + 1), sj)] = d
        diffs.append(_block_map(comps[i], comps[nxt], src_parts, dst_parts, blocks))
    return PeriodicComplex(alg, m, comps, diffs)


def unroll(v: PeriodicComplex, lo: int, hi: int) -> BoundedComplex:
    """Window a periodic complex into Z-graded data: degree j holds
    V^{j mod m}.  The differential leaving the top of the window is dropped,
    since a bounded complex is zero beyond it."""
    comps = [v.component(j) for j in range(lo, hi + 1)]
    diffs = [v.differential(j) for j in range(lo, hi)]
    return BoundedComplex(v.algebra, lo, hi, comps, diffs)


def projective_resolution(m: Representation) -> BoundedComplex:
    """A finite projective resolution ... -> P_1 -> P_0 placed in degrees
    [-length, 0] (acyclic bound quiver algebras have finite global
    dimension, so this terminates)."""
    alg = m.algebra
    p0, onto = projective_cover(m)
    terms = [p0]
    maps = []
    k, incl = onto.kernel()
    guard = alg.quiver.n + len(alg.relations) + 2
    while not k.is_zero():
        if len(terms) > guard:
            raise ShapeMismatch("resolution failed to terminate")
        p_next, onto_next = projective_cover(k)
        maps.append(incl @ onto_next)
        terms.append(p_next)
        k, incl = onto_next.kernel()
    lo = -(len(terms) - 1)
    comps = list(reversed(terms))
    diffs = list(reversed(maps))
    return BoundedComplex(alg, lo, 0, comps, diffs)


def resolution_augmentation(res: BoundedComplex, module: Representation, m: int) -> ChainMap:
    """The quasi-isomorphism cover(P*, m) -> stalk(module, 0) induced by
    P_0 -> M."""
    _, onto = projective_cover(module)
    # Rebuild the cover and the augmentation on its degree-0 block.
    per = cover(res, m)
    target = stalk(module, 0, m)
    alg = module.algebra
    field = alg.field
    maps = []
    for i in range(m):
        blocks = []
        for vtx in range(alg.quiver.n):
            rowdim = target.components[i].dims[vtx]
            coldim = per.components[i].dims[vtx]
            mat = [[field.zero()] * coldim for _ in range(rowdim)]
            if i == 0 and rowdim:
                # Degree-0 block of the cover starts with the j-class of 0;
                # P_0 sits at window degree 0, the first member of class 0
                # within [lo, 0] ordered ascending is lo-side, so locate it.
                offset = 0
                for j in range(res.lo, res.hi + 1):
                    if j % m == 0:
                        if j == 0:
                            break
                        offset += res.component(j).dims[vtx]
                src = onto.blocks[vtx]
                for r in range(rowdim):
                    for c in range(src.cols):
                        mat[r][offset + c] = src.e[r][c]
            blocks.append(Matrix(field, rowdim, coldim, mat))
        maps.append(ModuleMap(per.components[i], target.components[i], blocks))
    return ChainMap(per, target, maps)


# ---------------------------------------------------------------------------
# Random generation
# ---------------------------------------------------------------------------


def random_complex(algebra: QuiverAlgebra, m: int, max_dim: int, rng) -> PeriodicComplex:
    """A seeded random m-periodic complex.

    Components are random representations; differentials are sampled from the
    kernel of the linear d.d = 0 constraints (for m = 1 the quadratic
    constraint is handled by the factorization d = f h with h f = 0), so
    nonzero differentials appear with high probability instead of being
    rejection-sampled away.
    """
    from .quiver import random_representation

    if max_dim == 0:
        return zero_complex(algebra, m)
    comps = [random_representation(algebra, max_dim, rng) for _ in range(m)]
    field = algebra.field
    if m == 1:
        c = comps[0]
        endos = hom_space(c, c)
        h = _random_combo(c, c, endos, rng)
        f = _constrained_map(c, c, [(None, h)], rng)  # f with h @ f = 0
        d = f @ h
        return PeriodicComplex(algebra, 1, comps, [d])
    diffs = []
    d_prev = None
    for i in range(m):
        src = comps[i]
        dst = comps[(i + 1) % m]
        constraints = []
        if d_prev is not None:
            constraints.append((d_prev, None))  # d_i @ d_prev = 0
        if i == m - 1 and diffs:
            constraints.append((None, diffs[0]))  # d_0 @ d_{m-1} = 0 (wrap)
        if i == m - 1 and not diffs:
            constraints = constraints  # m == 1 handled above
        d = _constrained_map(src, dst, constraints, rng)
        diffs.append(d)
        d_prev = d
    # The wrap constraint couples d_0 and d_{m-1}; the sampling above fixed
    # d_0 first, so the last solve already respected it.
    return PeriodicComplex(algebra, m, comps, diffs)


def _random_combo(src, dst, basis, rng):
    f = ModuleMap.zero(src, dst)
    field = src.algebra.field
    for b in basis:
        c = rng.randint(-2, 2) if field.p is None else rng.randrange(field.p)
        if c:
            f = f + b.scale(field.of(c))
    return f


def _constrained_map(src, dst, constraints, rng):
    """Random module map X: src -> dst with X @ r = 0 and l @ X = 0 for each
    (r, l) constraint pair (r precomposition, l postcomposition)."""
    field = src.algebra.field
    basis = hom_space(src, dst)
    if not basis:
        return ModuleMap.zero(src, dst)
    rows = []
    for right, left in constraints:
        per_basis = []
        for b in basis:
            g = b @ right if right is not None else b
            g = left @ g if left is not None else g
            per_basis.append(_flatten(g))
        if per_basis and per_basis[0]:
            for r in range(len(per_basis[0])):
                rows.append([pb[r] for pb in per_basis])
    if not rows:
        return _random_combo(src, dst, basis, rng)
    a = Matrix._new(field, len(rows), len(basis), tuple(tuple(r) for r in rows))
    ker = kernel_basis(a)
    f = ModuleMap.zero(src, dst)
    for j in range(ker.cols):
        c = rng.randint(-2, 2) if field.p is None else rng.randrange(field.p)
        if c:
            col = ker.column(j)
            g = ModuleMap.zero(src, dst)
            for k, b in enumerate(basis):
                if col[k] != 0:
                    g = g + b.scale(col[k])
            f = f + g.scale(field.of(c))
    return f


def random_chain_map(v: PeriodicComplex, w: PeriodicComplex, rng) -> ChainMap:
    """A cheap random chain map V -> W: null-homotopic combinations
    d s + s d (always chain maps), scalar identities when V = W, zero as a
    fallback, and occasionally a genuine random element of the chain-map
    space when it is small."""
    m = v.m
    field = v.algebra.field
    style = rng.randrange(4)
    if style == 0 and v == w:
        c = field.of(rng.randint(1, 2)) if field.p is None else field.of(rng.randrange(1, field.p))
        return ChainMap(v, w, [ModuleMap.identity(comp).scale(c) for comp in v.components],
                        _checked=True)
    if style == 1:
        total = sum(len(hom_space(v.components[i], w.components[i])) for i in range(m))
        if total <= 60:
            basis = chain_map_space(v, w)
            if basis:
                f = ChainMap.zero(v, w)
                for b in basis:
                    c = rng.randint(-1, 1) if field.p is None else rng.randrange(field.p)
                    if c:
                        f = f + ChainMap(v, w, [mm.scale(field.of(c)) for mm in b.maps],
                                         _checked=True)
                return f
    if style in (1, 2):
        s = [_random_combo(v.components[i], w.components[(i - 1) % m],
                           hom_space(v.components[i], w.components[(i - 1) % m]), rng)
             for i in range(m)]
        maps = []
        for i in range(m):
            maps.append((w.differentials[(i - 1) % m] @ s[i]) +
                        (s[(i + 1) % m] @ v.differentials[i]))
        return ChainMap(v, w, maps)
    return ChainMap.zero(v, w)
