"""Bound quiver algebras and their finite-dimensional representations.

A `QuiverAlgebra` is a finite acyclic quiver together with monomial
admissible relations (paths of length >= 2 declared zero).  Its basis is the
set of paths containing no relation as a contiguous subpath; acyclicity makes
that basis finite.

Composition convention: the path written "ab" applies b first and a second,
i.e. reads right to left.  Relations in JSON files are written the same way:
``["a", "b"]`` kills the composite a∘b.

Representations assign a vector space dimension to each vertex and a matrix
to each arrow; for an arrow a: i -> j the matrix has shape dims[j] x dims[i]
and acts on column vectors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import CyclicQuiver, InadmissibleRelation, NotHereditary, ShapeMismatch
from .fields import Field
from .linalg import Matrix, column_space_basis, kernel_basis, rank, solve


@dataclass(frozen=True, slots=True)
class Arrow:
    source: int
    target: int
    label: str


class Quiver:
    """A finite acyclic quiver with vertices 0..n-1 and labelled arrows."""

    def __init__(self, n_vertices: int, arrows):
        if n_vertices < 1:
            raise ValueError("a quiver needs at least one vertex")
        self.n = n_vertices
        self.arrows = tuple(Arrow(int(s), int(t), str(l)) for s, t, l in arrows)
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be unique")
        for a in self.arrows:
            if not (0 <= a.source < self.n and 0 <= a.target < self.n):
                raise ValueError(f"arrow {a.label} endpoints out of range")
        self.label_index = {a.label: k for k, a in enumerate(self.arrows)}
        self.arrows_from = [[] for _ in range(self.n)]
        self.arrows_into = [[] for _ in range(self.n)]
        for k, a in enumerate(self.arrows):
            self.arrows_from[a.source].append(k)
            self.arrows_into[a.target].append(k)
        self.topological_order = self._toposort()

    def _toposort(self):
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[a.target] += 1
        stack = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while stack:
            v = stack.pop()
            order.append(v)
            for k in self.arrows_from[v]:
                t = self.arrows[k].target
                indeg[t] -= 1
                if indeg[t] == 0:
                    stack.append(t)
        if len(order) != self.n:
            raise CyclicQuiver("the quiver has a directed cycle")
        return tuple(order)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.n == other.n and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.n, self.arrows))


@dataclass(frozen=True, slots=True)
class Path:
    """A path in the quiver; ``arrows`` lists arrow indices in application
    order (first applied first), so the length-0 path at vertex v is
    ``Path(v, v, ())``."""

    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self):
        return len(self.arrows)


class QuiverAlgebra:
    """Path algebra of an acyclic quiver modulo monomial admissible relations."""

    def __init__(self, quiver: Quiver, field: Field, relations=()):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(self._check_relation(r) for r in relations)
        self._relation_set = set(self.relations)
        self._relation_lengths = sorted({len(r) for r in self.relations})
        self.paths = self._enumerate_paths()
        self._paths_from = [[] for _ in range(quiver.n)]
        for p in self.paths:
            self._paths_from[p.source].append(p)
        self._key = (quiver.n, quiver.arrows, self.relations, field.p)

    def _check_relation(self, rel):
        try:
            idx = tuple(self.quiver.label_index[l] for l in rel)
        except KeyError as exc:
            raise InadmissibleRelation(f"unknown arrow label in relation: {exc}") from None
        if len(idx) < 2:
            raise InadmissibleRelation("relations must be paths of length >= 2")
        # JSON order is composition order ("ab" = b first); flip to application order.
        app = tuple(reversed(idx))
        arr = self.quiver.arrows
        for a, b in zip(app, app[1:]):
            if arr[a].target != arr[b].source:
                raise InadmissibleRelation("relation is not a composable path")
        return app

    def _dies(self, arrows: tuple[int, ...]) -> bool:
        # Only suffix checks are needed when paths are grown one arrow at a time.
        for ln in self._relation_lengths:
            if len(arrows) >= ln and arrows[-ln:] in self._relation_set:
                return True
        return False

    def _enumerate_paths(self):
        paths = []
        for v in range(self.quiver.n):
            frontier = [Path(v, v, ())]
            while frontier:
                p = frontier.pop()
                paths.append(p)
                for k in self.quiver.arrows_from[p.target]:
                    ext = p.arrows + (k,)
                    if not self._dies(ext):
                        frontier.append(Path(v, self.quiver.arrows[k].target, ext))
        paths.sort(key=lambda p: (p.source, len(p.arrows), p.arrows))
        return tuple(paths)

    @property
    def dimension(self) -> int:
        return len(self.paths)

    @property
    def n_vertices(self) -> int:
        return self.quiver.n

    @property
    def is_hereditary(self) -> bool:
        return not self.relations

    def path_basis(self) -> tuple[Path, ...]:
        return self.paths

    def paths_from(self, v: int) -> list[Path]:
        return list(self._paths_from[v])

    def path_label(self, p: Path) -> str:
        if not p.arrows:
            return f"e{p.source + 1}"
        return "*".join(self.quiver.arrows[k].label for k in reversed(p.arrows))

    def content_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, QuiverAlgebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    # -- modules -----------------------------------------------------------

    def zero_module(self) -> "Representation":
        return Representation(self, [0] * self.quiver.n)

    def simple(self, v: int) -> "Representation":
        dims = [0] * self.quiver.n
        dims[v] = 1
        return Representation(self, dims)

    def projective(self, v: int) -> "Representation":
        """The projective at v: basis over vertex w is the set of paths v ~> w,
        with arrows acting by path composition (relations truncate to zero)."""
        by_target = [[] for _ in range(self.quiver.n)]
        for p in self._paths_from[v]:
            by_target[p.target].append(p)
        index = {}
        for w in range(self.quiver.n):
            for i, p in enumerate(by_target[w]):
                index[p.arrows] = i
        dims = [len(by_target[w]) for w in range(self.quiver.n)]
        maps = []
        z, o = self.field.zero(), self.field.one()
        for a_idx, a in enumerate(self.quiver.arrows):
            rows = [[z] * dims[a.source] for _ in range(dims[a.target])]
            for j, p in enumerate(by_target[a.source]):
                ext = p.arrows + (a_idx,)
                if not self._dies(ext):
                    rows[index[ext]][j] = o
            maps.append(Matrix(self.field, dims[a.target], dims[a.source], rows))
        return Representation(self, dims, maps)

    def path_matrix(self, M: "Representation", p: Path) -> Matrix:
        """The action of a path on M (identity for the empty path)."""
        out = Matrix.identity(self.field, M.dims[p.source])
        for k in p.arrows:
            out = M.maps[k] @ out
        return out

    # -- JSON --------------------------------------------------------------

    def to_json(self):
        return {
            "vertices": self.quiver.n,
            "arrows": [[a.source + 1, a.target + 1, a.label] for a in self.quiver.arrows],
            "relations": [
                [self.quiver.arrows[k].label for k in reversed(r)] for r in self.relations
            ],
            "field": self.field.json_name(),
        }

    @classmethod
    def from_json(cls, data) -> "QuiverAlgebra":
        quiver = Quiver(int(data["vertices"]),
                        [(s - 1, t - 1, l) for s, t, l in data["arrows"]])
        field = Field.from_json_name(data.get("field", "Q"))
        return cls(quiver, field, data.get("relations", []))

    @classmethod
    def load(cls, path) -> "QuiverAlgebra":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


class Representation:
    """A finite-dimensional module: vertex dimensions plus arrow matrices."""

    __slots__ = ("algebra", "dims", "maps", "_key")

    def __init__(self, algebra: QuiverAlgebra, dims, maps=None):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.quiver.n or any(d < 0 for d in self.dims):
            raise ShapeMismatch("dimension vector does not match the quiver")
        field = algebra.field
        if maps is None:
            maps = [Matrix.zeros(field, self.dims[a.target], self.dims[a.source])
                    for a in algebra.quiver.arrows]
        self.maps = tuple(maps)
        for k, a in enumerate(algebra.quiver.arrows):
            m = self.maps[k]
            if m.shape != (self.dims[a.target], self.dims[a.source]) or m.field != field:
                raise ShapeMismatch(f"arrow {a.label}: matrix shape {m.shape} does not fit")
        for r in algebra.relations:
            p = Path(algebra.quiver.arrows[r[0]].source, algebra.quiver.arrows[r[-1]].target, r)
            if not algebra.path_matrix(self, p).is_zero():
                raise ShapeMismatch("a relation acts nonzero on this representation")
        self._key = None

    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def content_key(self):
        if self._key is None:
            self._key = (self.algebra.content_key(), self.dims,
                         tuple(m.e for m in self.maps))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Representation) and self.content_key() == other.content_key()

    def __hash__(self):
        return hash(self.content_key())

    def __repr__(self):
        return f"Representation(dims={self.dims})"

    def to_json(self):
        return {
            "dims": list(self.dims),
            "maps": {self.algebra.quiver.arrows[k].label: m.to_json()
                     for k, m in enumerate(self.maps)},
        }

    @classmethod
    def from_json(cls, algebra: QuiverAlgebra, data) -> "Representation":
        dims = [int(d) for d in data["dims"]]
        maps = []
        for k, a in enumerate(algebra.quiver.arrows):
            raw = data.get("maps", {}).get(a.label, [])
            maps.append(Matrix.from_json(algebra.field, raw, dims[a.target], dims[a.source]))
        return cls(algebra, dims, maps)


class ModuleMap:
    """A morphism of representations: one matrix per vertex, commuting with
    every arrow action."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation, blocks, _checked=False):
        if source.algebra != target.algebra:
            raise ShapeMismatch("module map between different algebras")
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        if not _checked:
            self._validate()

    def _validate(self):
        alg = self.source.algebra
        if len(self.blocks) != alg.quiver.n:
            raise ShapeMismatch("one block per vertex required")
        for v in range(alg.quiver.n):
            if self.blocks[v].shape != (self.target.dims[v], self.source.dims[v]):
                raise ShapeMismatch(f"block at vertex {v} has the wrong shape")
        for k, a in enumerate(alg.quiver.arrows):
            lhs = self.blocks[a.target] @ self.source.maps[k]
            rhs = self.target.maps[k] @ self.blocks[a.source]
            if lhs != rhs:
                raise ShapeMismatch(f"map does not commute with arrow {a.label}")

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMap":
        f = m.algebra.field
        return cls(m, m, [Matrix.identity(f, d) for d in m.dims], _checked=True)

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "ModuleMap":
        f = source.algebra.field
        return cls(source, target,
                   [Matrix.zeros(f, dt, ds) for dt, ds in zip(target.dims, source.dims)],
                   _checked=True)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source and other.target != self.source:
            raise ShapeMismatch("composition endpoints do not match")
        return ModuleMap(other.source, self.target,
                         [a @ b for a, b in zip(self.blocks, other.blocks)], _checked=True)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a + b for a, b in zip(self.blocks, other.blocks)], _checked=True)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         [a - b for a, b in zip(self.blocks, other.blocks)], _checked=True)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [-b for b in self.blocks], _checked=True)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [b.scale(c) for b in self.blocks], _checked=True)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.source == other.source
                and self.target == other.target and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.source.content_key(), self.target.content_key(),
                     tuple(b.e for b in self.blocks)))

    def vertex_ranks(self) -> tuple[int, ...]:
        return tuple(rank(b) for b in self.blocks)

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.vertex_ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.vertex_ranks(), self.target.dims))

    def kernel(self) -> tuple[Representation, "ModuleMap"]:
        """The kernel subrepresentation together with its inclusion."""
        alg = self.source.algebra
        bases = [kernel_basis(b) for b in self.blocks]
        return _subrepresentation(self.source, bases)

    def image(self) -> tuple[Representation, "ModuleMap"]:
        """The image subrepresentation of the target with its inclusion."""
        bases = [column_space_basis(b) for b in self.blocks]
        return _subrepresentation(self.target, bases)

    def to_json(self):
        return [b.to_json() for b in self.blocks]

    @classmethod
    def from_json(cls, source: Representation, target: Representation, data) -> "ModuleMap":
        field = source.algebra.field
        blocks = [Matrix.from_json(field, raw, target.dims[v], source.dims[v])
                  for v, raw in enumerate(data)]
        return cls(source, target, blocks)


def _subrepresentation(m: Representation, bases: list[Matrix]):
    """Representation spanned by the given per-vertex column bases, which must
    be arrow-stable; returns (sub, inclusion)."""
    alg = m.algebra
    dims = [b.cols for b in bases]
    maps = []
    for k, a in enumerate(alg.quiver.arrows):
        pushed = m.maps[k] @ bases[a.source]
        maps.append(solve(bases[a.target], pushed))
    sub = Representation(alg, dims, maps)
    incl = ModuleMap(sub, m, bases)
    return sub, incl


def quotient_by(m: Representation, inclusion: ModuleMap):
    """Quotient of ``m`` by the image of a subrepresentation inclusion.

    Returns (quotient, projection).  Coordinates on the quotient are chosen
    by completing the subspace basis with standard basis vectors (pivot
    selection), so results are deterministic.
    """
    alg = m.algebra
    field = alg.field
    from .linalg import _rref_core, invert  # local import to avoid cycle at module load

    projections = []
    dims = []
    for v in range(alg.quiver.n):
        sub = inclusion.blocks[v]
        d = m.dims[v]
        srank = rank(sub)
        aug = sub.hstack(Matrix.identity(field, d)) if d else Matrix.zeros(field, 0, sub.cols)
        _, pivots, _ = _rref_core(aug, track=False)
        sub_piv = [j for j in pivots if j < sub.cols][:srank]
        comp = [j - sub.cols for j in pivots if j >= sub.cols]
        basis = Matrix.from_columns(
            field,
            [sub.column(j) for j in sub_piv] + [tuple(field.one() if i == c else field.zero() for i in range(d)) for c in comp],
            d,
        )
        inv = invert(basis) if d else Matrix.zeros(field, 0, 0)
        proj = inv.submatrix(range(srank, d), range(d))
        projections.append(proj)
        dims.append(d - srank)
    maps = []
    for k, a in enumerate(alg.quiver.arrows):
        # Induced arrow map: project after acting on any lift; well-defined
        # because the subspace is arrow-stable (verified below).
        s, t = a.source, a.target
        lift = _right_inverse(projections[s], field)
        maps.append(projections[t] @ m.maps[k] @ lift)
    q = Representation(alg, dims, maps)
    proj_map = ModuleMap(m, q, projections)
    for k, a in enumerate(alg.quiver.arrows):
        if not (projections[a.target] @ (m.maps[k] @ inclusion.blocks[a.source])).is_zero():
            raise ShapeMismatch("quotient arrow map is not well defined")
    return q, proj_map


def _right_inverse(proj: Matrix, field: Field) -> Matrix:
    """A section of a surjective matrix (columns solve proj @ x = e_i)."""
    return solve(proj, Matrix.identity(field, proj.rows))


def direct_sum(m: Representation, n: Representation) -> Representation:
    if m.algebra != n.algebra:
        raise ShapeMismatch("direct sum needs a common algebra")
    alg = m.algebra
    field = alg.field
    dims = [a + b for a, b in zip(m.dims, n.dims)]
    maps = []
    for k, a in enumerate(alg.quiver.arrows):
        top = m.maps[k].hstack(Matrix.zeros(field, m.dims[a.target], n.dims[a.source]))
        bot = Matrix.zeros(field, n.dims[a.target], m.dims[a.source]).hstack(n.maps[k])
        maps.append(top.vstack(bot))
    return Representation(alg, dims, maps)


def sum_inclusions(m: Representation, n: Representation):
    """Inclusions and projections for M (+) N."""
    s = direct_sum(m, n)
    field = m.algebra.field

    def blocks(src, offset):
        out = []
        for v in range(m.algebra.quiver.n):
            b = Matrix.zeros(field, s.dims[v], src.dims[v])
            rows = [list(r) for r in b.e]
            for i in range(src.dims[v]):
                rows[offset[v] + i][i] = field.one()
            out.append(Matrix(field, s.dims[v], src.dims[v], rows))
        return out

    off_m = [0] * m.algebra.quiver.n
    off_n = list(m.dims)
    incl_m = ModuleMap(m, s, blocks(m, off_m))
    incl_n = ModuleMap(n, s, blocks(n, off_n))
    return s, incl_m, incl_n


# ---------------------------------------------------------------------------
# Hom, Ext^1, Euler form
# ---------------------------------------------------------------------------


def hom_space(m: Representation, n: Representation) -> list[ModuleMap]:
    """A basis of Hom(M, N), found as the kernel of the commuting-square
    constraint system."""
    if m.algebra != n.algebra:
        raise ShapeMismatch("hom between different algebras")
    alg = m.algebra
    field = alg.field
    offsets = []
    total = 0
    for v in range(alg.quiver.n):
        offsets.append(total)
        total += n.dims[v] * m.dims[v]
    rows = []
    z = field.zero()
    for k, a in enumerate(alg.quiver.arrows):
        s, t = a.source, a.target
        ma, na = m.maps[k], n.maps[k]
        # (f_t @ M_a - N_a @ f_s)[r][c] = 0 for all r < dims_N[t], c < dims_M[s]
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row = [z] * total
                for x in range(m.dims[t]):
                    row[offsets[t] + r * m.dims[t] + x] = ma.e[x][c]
                for x in range(n.dims[s]):
                    idx = offsets[s] + x * m.dims[s] + c
                    row[idx] = field.sub(row[idx], na.e[r][x])
                rows.append(row)
    if not rows:
        system = Matrix.zeros(field, 0, total)
    else:
        system = Matrix._new(field, len(rows), total, tuple(tuple(r) for r in rows))
    basis = kernel_basis(system)
    out = []
    for j in range(basis.cols):
        col = basis.column(j)
        blocks = []
        for v in range(alg.quiver.n):
            rows_v = []
            for r in range(n.dims[v]):
                start = offsets[v] + r * m.dims[v]
                rows_v.append(col[start:start + m.dims[v]])
            blocks.append(Matrix._new(field, n.dims[v], m.dims[v], tuple(rows_v)))
        out.append(ModuleMap(m, n, blocks))
    return out


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))


def radical_inclusion(m: Representation):
    """The radical (sum of all arrow images) as a subrepresentation."""
    alg = m.algebra
    field = alg.field
    bases = []
    for v in range(alg.quiver.n):
        incoming = [m.maps[k] for k in alg.quiver.arrows_into[v]]
        if incoming:
            stacked = incoming[0]
            for extra in incoming[1:]:
                stacked = stacked.hstack(extra)
            bases.append(column_space_basis(stacked))
        else:
            bases.append(Matrix.zeros(field, m.dims[v], 0))
    return _subrepresentation(m, bases)


def projective_cover(m: Representation):
    """The projective cover P -> M built from generators of M/rad M.

    Returns (P, onto) with ``onto`` verified surjective.
    """
    alg = m.algebra
    field = alg.field
    rad, rad_incl = radical_inclusion(m)
    # Complete each radical basis to a basis of M_v; the new vectors generate.
    from .linalg import _rref_core

    gens = []  # (vertex, lift column)
    for v in range(alg.quiver.n):
        d = m.dims[v]
        sub = rad_incl.blocks[v]
        aug = sub.hstack(Matrix.identity(field, d)) if d else Matrix.zeros(field, 0, sub.cols)
        _, pivots, _ = _rref_core(aug, track=False)
        for j in pivots:
            if j >= sub.cols:
                c = j - sub.cols
                gens.append((v, tuple(field.one() if i == c else field.zero() for i in range(d))))
    if not gens:
        p0 = alg.zero_module()
        return p0, ModuleMap(p0, m, [Matrix.zeros(field, dv, 0) for dv in m.dims], _checked=True)
    summands = [alg.projective(v) for v, _ in gens]
    p0 = summands[0]
    offsets = [[0] * alg.quiver.n]
    for s in summands[1:]:
        offsets.append(list(p0.dims))
        p0 = direct_sum(p0, s)
    blocks = [[[field.zero()] * p0.dims[w] for _ in range(m.dims[w])] for w in range(alg.quiver.n)]
    for g, (v, lift) in enumerate(gens):
        by_target = [[] for _ in range(alg.quiver.n)]
        for p in alg.paths_from(v):
            by_target[p.target].append(p)
        lift_col = Matrix.from_columns(field, [list(lift)], m.dims[v])
        for w in range(alg.quiver.n):
            for i, p in enumerate(by_target[w]):
                vec = alg.path_matrix(m, p) @ lift_col
                col = offsets[g][w] + i
                for r in range(m.dims[w]):
                    blocks[w][r][col] = vec.e[r][0]
    onto = ModuleMap(p0, m, [Matrix(field, m.dims[w], p0.dims[w], blocks[w])
                             for w in range(alg.quiver.n)])
    if not onto.is_surjective():
        raise ShapeMismatch("projective cover failed to surject")
    return p0, onto


def is_projective(m: Representation) -> bool:
    _, onto = projective_cover(m)
    k, _ = onto.kernel()
    return k.is_zero()


def ext1_dim(m: Representation, n: Representation) -> int:
    """dim Ext^1(M, N), computed from 0 -> K -> P0 -> M -> 0 as the cokernel
    of Hom(P0, N) -> Hom(K, N).

    Exact for any finite-global-dimension bound quiver algebra since
    Ext^1(P0, N) = 0; in the hereditary case K is projective and this is the
    usual two-step projective presentation.
    """
    p0, onto = projective_cover(m)
    k, incl = onto.kernel()
    if k.is_zero():
        return 0
    hom_k = hom_space(k, n)
    if not hom_k:
        return 0
    hom_p = hom_space(p0, n)
    field = m.algebra.field
    cols = []
    for phi in hom_p:
        restricted = phi @ incl
        cols.append(_hom_coordinates(restricted, hom_k, field))
    if not cols:
        return len(hom_k)
    mat = Matrix.from_columns(field, cols, len(hom_k))
    return len(hom_k) - rank(mat)


def _hom_coordinates(f: ModuleMap, basis: list[ModuleMap], field: Field):
    """Coordinates of f in a Hom-space basis (solved exactly)."""
    entries = []
    for v in range(len(f.blocks)):
        entries.extend(x for row in f.blocks[v].e for x in row)
    cols = []
    for b in basis:
        col = []
        for v in range(len(b.blocks)):
            col.extend(x for row in b.blocks[v].e for x in row)
        cols.append(col)
    mat = Matrix.from_columns(field, cols, len(entries))
    target = Matrix.from_columns(field, [entries], len(entries))
    return solve(mat, target).column(0)


def euler_form(algebra: QuiverAlgebra, d, e) -> int:
    """Bilinear Euler form of a hereditary algebra on dimension vectors:
    sum_i d_i e_i - sum_{a: i->j} d_i e_j."""
    if not algebra.is_hereditary:
        raise NotHereditary("the Euler form in this closed form needs no relations")
    d = tuple(int(x) for x in d)
    e = tuple(int(x) for x in e)
    if len(d) != algebra.quiver.n or len(e) != algebra.quiver.n:
        raise ShapeMismatch("dimension vector length mismatch")
    total = sum(a * b for a, b in zip(d, e))
    for arr in algebra.quiver.arrows:
        total -= d[arr.source] * e[arr.target]
    return total


# ---------------------------------------------------------------------------
# Composition series and random representations
# ---------------------------------------------------------------------------


def simple_submodule_vertex(m: Representation):
    """Locate a simple submodule: a vertex v and a vector killed by every
    arrow out of v.  Returns (v, column Matrix) or None for the zero module."""
    alg = m.algebra
    field = alg.field
    start = next((v for v in alg.quiver.topological_order if m.dims[v] > 0), None)
    if start is None:
        return None
    v = start
    vec = Matrix.from_columns(field, [[field.one() if i == 0 else field.zero()
                                       for i in range(m.dims[v])]], m.dims[v])
    while True:
        moved = False
        for k in alg.quiver.arrows_from[v]:
            img = m.maps[k] @ vec
            if not img.is_zero():
                v = alg.quiver.arrows[k].target
                vec = img
                moved = True
                break
        if not moved:
            return v, vec


def composition_series(m: Representation) -> list[int]:
    """Vertices of the composition factors, produced by peeling a simple
    submodule at a time.  The multiset of vertices always equals the dimension
    vector, which is what makes dimension vectors K-theory classes."""
    factors = []
    cur = m
    while not cur.is_zero():
        v, vec = simple_submodule_vertex(cur)
        factors.append(v)
        alg = cur.algebra
        field = alg.field
        bases = [vec if w == v else Matrix.zeros(field, cur.dims[w], 0)
                 for w in range(alg.quiver.n)]
        sub, incl = _subrepresentation(cur, bases)
        cur, _ = quotient_by(cur, incl)
    return factors


def random_representation(algebra: QuiverAlgebra, max_dim: int, rng) -> Representation:
    """A random representation with vertex dimensions in [0, max_dim].

    Arrow matrices are sampled with small entries; relation constraints are
    restored by re-solving the final arrow of each violated relation inside
    the kernel of the induced linear condition, then everything is verified
    by the Representation constructor.
    """
    field = algebra.field
    dims = [rng.randint(0, max_dim) for _ in range(algebra.quiver.n)]
    maps = [_random_matrix(field, dims[a.target], dims[a.source], rng)
            for a in algebra.quiver.arrows]

    def composite(arrows):
        out = Matrix.identity(field, dims[algebra.quiver.arrows[arrows[0]].source])
        for k in arrows:
            out = maps[k] @ out
        return out

    for _ in range(4):
        bad = [r for r in algebra.relations if not composite(r).is_zero()]
        if not bad:
            break
        last_arrows = {r[-1] for r in bad}
        for k in sorted(last_arrows):
            a = algebra.quiver.arrows[k]
            rests = [composite(r[:-1]) for r in algebra.relations if r[-1] == k]
            maps[k] = _solve_right_annihilator(field, dims[a.target], dims[a.source], rests, rng)
    else:
        for r in algebra.relations:
            if not composite(r).is_zero():
                k = r[-1]
                a = algebra.quiver.arrows[k]
                maps[k] = Matrix.zeros(field, dims[a.target], dims[a.source])
    return Representation(algebra, dims, maps)


def _random_matrix(field: Field, rows: int, cols: int, rng) -> Matrix:
    if field.p is None:
        return Matrix(field, rows, cols, [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)])
    return Matrix(field, rows, cols, [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)])


def _solve_right_annihilator(field: Field, rows: int, cols: int, rights: list[Matrix], rng) -> Matrix:
    """Random X (rows x cols) with X @ R == 0 for every R in rights."""
    stacked = None
    for r in rights:
        stacked = r if stacked is None else stacked.hstack(r)
    if stacked is None or stacked.cols == 0 or rows * cols == 0:
        return _random_matrix(field, rows, cols, rng)
    # Unknowns are the entries of X; constraint (X @ S)[i][j] = 0.
    total = rows * cols
    sys_rows = []
    z = field.zero()
    for i in range(rows):
        for j in range(stacked.cols):
            row = [z] * total
            for x in range(cols):
                row[i * cols + x] = stacked.e[x][j]
            sys_rows.append(row)
    system = Matrix._new(field, len(sys_rows), total, tuple(tuple(r) for r in sys_rows))
    basis = kernel_basis(system)
    flat = [z] * total
    for j in range(basis.cols):
        c = field.of(rng.randint(-2, 2)) if field.p is None else rng.randrange(field.p)
        col = basis.column(j)
        flat = [field.add(f, field.mul(c, x)) for f, x in zip(flat, col)]
    return Matrix(field, rows, cols, [flat[i * cols:(i + 1) * cols] for i in range(rows)])
