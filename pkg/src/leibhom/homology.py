"""Bounded chain complexes over Q: homology, induced maps, mapping cones.

A complex built at cutoff c carries boundaries d_1..d_c and yields
trustworthy homology through degree c-1 only (degree c lacks its incoming
boundary); the API enforces this. Homology data is computed lazily in two
stages: Betti numbers need only two ranks, while representatives and the
coordinate solver are materialized on first use.
"""

from __future__ import annotations

from .linalg import (SparseMatrix, SpanSolver, blocked_rank,
                     rank_kernel_image, rank_only)


class ChainComplex:
    def __init__(self, kind, dims, boundaries, labeler=None, meta=None, skipped=()):
        self.kind = kind
        self.dims = list(dims)
        self.boundaries = list(boundaries)  # boundaries[n] = d_n, index 0 unused
        self.labeler = labeler
        self.meta = dict(meta or {})
        self.skipped = tuple(skipped)       # degrees dropped by the resource bound
        self._ranks = {}
        self._homology = {}
        if len(self.boundaries) != len(self.dims):
            raise ValueError("need one boundary slot per degree")
        for n in range(1, self.cutoff + 1):
            b = self.boundaries[n]
            if b.rows != self.dims[n - 1] or b.cols != self.dims[n]:
                raise ValueError("boundary %d has shape %dx%d, expected %dx%d"
                                 % (n, b.rows, b.cols, self.dims[n - 1], self.dims[n]))

    @property
    def cutoff(self) -> int:
        return len(self.dims) - 1

    def boundary(self, n: int) -> SparseMatrix:
        if not 1 <= n <= self.cutoff:
            raise ValueError("boundary degree %d outside 1..%d" % (n, self.cutoff))
        return self.boundaries[n]

    def labels(self, n: int):
        if self.labeler is None:
            return ["%s_%d[%d]" % (self.kind, n, i) for i in range(self.dims[n])]
        return self.labeler(n)

    def rank_boundary(self, n: int) -> int:
        if n <= 0 or n > self.cutoff:
            if n <= 0:
                return 0
            raise ValueError("rank of d_%d not available at cutoff %d" % (n, self.cutoff))
        if n not in self._ranks:
            self._ranks[n] = rank_only(self.boundaries[n])
        return self._ranks[n]

    def homology(self, n: int) -> "HomologyData":
        """Valid for 0 <= n <= cutoff-1; degree cutoff lacks d_{cutoff+1}."""
        if not 0 <= n <= self.cutoff - 1:
            raise ValueError("homology degree %d outside 0..%d (cutoff %d)"
                             % (n, self.cutoff - 1, self.cutoff))
        if n not in self._homology:
            betti = self.dims[n] - self.rank_boundary(n) - self.rank_boundary(n + 1)
            self._homology[n] = HomologyData(self, n, betti)
        return self._homology[n]

    def betti(self, n: int) -> int:
        return self.homology(n).betti

    def truncate(self, new_cutoff: int) -> "ChainComplex":
        if new_cutoff > self.cutoff:
            raise ValueError("cannot extend by truncation")
        out = ChainComplex(self.kind, self.dims[:new_cutoff + 1],
                           self.boundaries[:new_cutoff + 1], self.labeler,
                           self.meta, [s for s in self.skipped if s <= new_cutoff])
        for n, r in self._ranks.items():
            if n <= new_cutoff:
                out._ranks[n] = r
        return out

    def __repr__(self):
        return "ChainComplex(%s, dims=%s)" % (self.kind, self.dims)


def verify_boundary_squares(C: ChainComplex):
    """True iff dated d = 0 in all composable degrees; else (False, (degree, column))."""
    for n in range(2, C.cutoff + 1):
        upper = C.boundaries[n]
        lower = C.boundaries[n - 1]
        for j in range(upper.cols):
            if lower.apply(upper.columns[j]):
                return False, (n, j)
    return True, None


class HomologyData:
    """Betti number plus (lazily) representatives and a coordinate solver.

    The solver spans all of C_n by the image of d_{n+1}, then the chosen
    representative cycles, then a standard-basis completion. Expressing any
    vector against it yields its class coordinates; a cycle is a boundary iff
    those coordinates vanish.
    """

    def __init__(self, complex_: ChainComplex, degree: int, betti: int):
        self.complex = complex_
        self.degree = degree
        self.betti = betti
        self._solver = None
        self._reps = None
        self._rep_positions = None
        self._completion_positions = None

    @property
    def representatives(self):
        self._ensure_solver()
        return self._reps

    def _ensure_solver(self):
        if self._solver is not None:
            return
        C, n = self.complex, self.degree
        dim_n = C.dims[n]
        if n == 0:
            kernel = [{i: 1} for i in range(dim_n)]
        else:
            data = rank_kernel_image(C.boundary(n))
            C._ranks.setdefault(n, data.rank)
            kernel = data.kernel
        image_solver = SpanSolver(track_combos=False)
        image_vectors = []
        if n + 1 <= C.cutoff:
            for col in C.boundary(n + 1).columns:
                if col and image_solver.insert(col):
                    pass
            image_vectors = [dict(image_solver.pivots[k][0])
                             for k in sorted(image_solver.pivots)]
        C._ranks.setdefault(n + 1, len(image_vectors))
        full = SpanSolver(track_combos=True)
        for v in image_vectors:
            full.insert(v)
        n_img = full.rank
        want = dim_n - (C.rank_boundary(n) if n >= 1 else 0)  # dim of the cycle space
        reps = []
        rep_positions = []
        for k in kernel:
            if full.rank >= want:
                break
            if full.insert(k):
                reps.append(dict(k))
                rep_positions.append(full.num_inserted - 1)
        if len(reps) != self.betti:
            raise RuntimeError("representative count %d != betti %d (degree %d)"
                               % (len(reps), self.betti, n))
        completion_positions = []
        for i in range(dim_n):
            if full.rank == dim_n:
                break
            if full.insert({i: 1}):
                completion_positions.append(full.num_inserted - 1)
        self._solver = full
        self._reps = reps
        self._rep_positions = rep_positions
        self._completion_positions = completion_positions
        self._n_img = n_img

    def class_coords(self, vec: dict):
        """Homology-class coordinates of any chain, as a length-betti tuple.

        This is the linear functional family dual to the representatives: it
        kills boundaries and the completion directions.
        """
        self._ensure_solver()
        coords = self._solver.express(vec)
        return tuple(coords.get(p, 0) for p in self._rep_positions)

    def is_cycle_combination(self, vec: dict) -> bool:
        self._ensure_solver()
        coords = self._solver.express(vec)
        return all(not coords.get(p, 0) for p in self._completion_positions)

    def is_boundary(self, vec: dict) -> bool:
        """For a cycle: True iff its class vanishes. Raises on non-cycles."""
        self._ensure_solver()
        coords = self._solver.express(vec)
        if any(coords.get(p, 0) for p in self._completion_positions):
            raise ValueError("vector is not a cycle in degree %d" % self.degree)
        return all(not coords.get(p, 0) for p in self._rep_positions)


class ChainMapRep:
    """Degree-indexed matrices source -> target with a degree shift.

    maps[n] sends source degree n to target degree n - shift. chain_sign
    records the commutation convention: target_d o maps[n] = chain_sign *
    maps[n-1] o source_d (the cone projection anticommutes, everything else
    commutes on the nose).
    """

    def __init__(self, kind, source, target, shift, maps, chain_sign=1):
        self.kind = kind
        self.source = source
        self.target = target
        self.shift = shift
        self.maps = dict(maps)
        self.chain_sign = chain_sign
        for n, m in self.maps.items():
            tn = n - shift
            if m.cols != source.dims[n] or m.rows != target.dims[tn]:
                raise ValueError("map at degree %d has shape %dx%d, expected %dx%d"
                                 % (n, m.rows, m.cols, target.dims[tn], source.dims[n]))

    def degrees(self):
        return sorted(self.maps)

    def __repr__(self):
        return "ChainMapRep(%s, shift=%d, degrees=%s)" % (
            self.kind, self.shift, self.degrees())


def verify_chain_map(F: ChainMapRep, max_degree=None):
    """Check the commutation squares; returns (ok, witness).

    The witness is (degree, column) of the first failing square, comparing
    target_d(F(col)) against chain_sign * F(source_d(col)).
    """
    src, tgt, s = F.source, F.target, F.shift
    for n in F.degrees():
        if max_degree is not None and n > max_degree:
            continue
        if n - 1 not in F.maps:
            continue
        if not (1 <= n <= src.cutoff and 1 <= n - s <= tgt.cutoff):
            continue
        upper = F.maps[n]
        lower = F.maps[n - 1]
        dsrc = src.boundary(n)
        dtgt = tgt.boundary(n - s)
        for j in range(dsrc.cols):
            lhs = dtgt.apply(upper.columns[j])
            rhs = lower.apply(dsrc.columns[j])
            if F.chain_sign == -1:
                rhs = {k: -v for k, v in rhs.items()}
            if lhs != rhs:
                return False, (n, j)
    return True, None


def compose_maps(G: ChainMapRep, F: ChainMapRep, kind=None) -> ChainMapRep:
    """G after F; defined in degrees where both factors exist."""
    if G.source is not F.target and G.source.dims != F.target.dims:
        raise ValueError("composition mismatch: %s then %s" % (F.kind, G.kind))
    maps = {}
    for n, m in F.maps.items():
        gn = n - F.shift
        if gn in G.maps:
            maps[n] = G.maps[gn].matmul(m)
    return ChainMapRep(kind or ("%s.%s" % (G.kind, F.kind)), F.source, G.target,
                       F.shift + G.shift, maps,
                       chain_sign=F.chain_sign * G.chain_sign)


def identity_chain_map(C: ChainComplex) -> ChainMapRep:
    maps = {n: SparseMatrix.identity(C.dims[n]) for n in range(C.cutoff + 1)}
    return ChainMapRep("ID", C, C, 0, maps)


def induced_map(F: ChainMapRep, n: int) -> SparseMatrix:
    """Matrix of F_* : H_n(source) -> H_{n-shift}(target) in representative bases."""
    if n not in F.maps:
        raise ValueError("chain map has no degree-%d component" % n)
    m = n - F.shift
    hs = F.source.homology(n)
    ht = F.target.homology(m)
    cols = []
    mat = F.maps[n]
    for rep in hs.representatives:
        img = mat.apply(rep)
        if not ht.is_cycle_combination(img):
            raise ValueError(
                "image of a degree-%d representative is not a cycle "
                "(signals an unverified chain map)" % n)
        cols.append(ht.class_coords(img))
    out = SparseMatrix(ht.betti, hs.betti)
    for j, coords in enumerate(cols):
        for i, v in enumerate(coords):
            if v:
                out.columns[j][i] = v
    return out


def induced_rank_streamed(dim_source, dim_below, boundary_col, map_col,
                          target_hom: HomologyData, stop_at_target=False):
    """Rank of the induced map on homology without target-side materialization.

    For each source basis column j the stacked vector (d(e_j), psi(F(e_j)))
    goes into a staircase echelon with the boundary block leading; pivots
    landing in the psi block count exactly rank(F_*), because restricting the
    class functionals psi to the cycle space quotients out the row space of
    d. With stop_at_target the stream stops once the target Betti number is
    reached (surjectivity established; the count can only grow).

    Returns (rank_lower_bound, completed).
    """
    split = dim_below
    want = target_hom.betti if stop_at_target else None

    def stacked():
        for j in range(dim_source):
            vec = dict(boundary_col(j))
            psi = target_hom.class_coords(map_col(j))
            for l, val in enumerate(psi):
                if val:
                    vec[split + l] = val
            yield vec

    first, second, completed = blocked_rank(stacked(), split, stop_at_second=want)
    return second, completed


class MappingCone:
    """Cone of a degree-preserving chain map f: C -> C'.

    M_n = C_{n-1} (+) C'_n with the C block first; the boundary is
    d(c, c') = (-dc, dc' + fc). proj picks out the C block (it anticommutes,
    shift 1) and incl embeds C' (a chain map); proj o incl = 0.
    """

    def __init__(self, cone, proj, incl, of):
        self.cone = cone
        self.proj = proj
        self.incl = incl
        self.of = of


def mapping_cone(F: ChainMapRep) -> MappingCone:
    if F.shift != 0:
        raise ValueError("mapping cone needs a degree-preserving map")
    C, Cp = F.source, F.target
    cutoff = min(C.cutoff, Cp.cutoff)
    dims = [(C.dims[n - 1] if n >= 1 else 0) + Cp.dims[n] for n in range(cutoff + 1)]
    boundaries = [None]
    for n in range(1, cutoff + 1):
        c_block = C.dims[n - 1]
        rows_c = C.dims[n - 2] if n >= 2 else 0
        mat = SparseMatrix(dims[n - 1], dims[n])
        for j in range(c_block):
            col = {}
            if n >= 2:
                for i, v in C.boundary(n - 1).columns[j].items():
                    col[i] = -v
            if n - 1 in F.maps:
                for i, v in F.maps[n - 1].columns[j].items():
                    val = col.get(rows_c + i, 0) + v
                    if val:
                        col[rows_c + i] = val
                    else:
                        col.pop(rows_c + i, None)
            mat.columns[j] = col
        for j in range(Cp.dims[n]):
            col = {}
            for i, v in Cp.boundary(n).columns[j].items():
                col[rows_c + i] = v
            mat.columns[c_block + j] = col
        boundaries.append(mat)

    def labeler(n):
        left = ["C[%d]:%s" % (n - 1, lab) for lab in (C.labels(n - 1) if n >= 1 else [])]
        right = ["C'[%d]:%s" % (n, lab) for lab in Cp.labels(n)]
        return left + right

    cone = ChainComplex("CONE(%s)" % F.kind, dims, boundaries, labeler,
                        meta={"of": F.kind})
    proj_maps = {}
    for n in range(1, cutoff + 1):
        m = SparseMatrix(C.dims[n - 1], dims[n])
        for j in range(C.dims[n - 1]):
            m.columns[j][j] = 1
        proj_maps[n] = m
    incl_maps = {}
    for n in range(cutoff + 1):
        c_block = C.dims[n - 1] if n >= 1 else 0
        m = SparseMatrix(dims[n], Cp.dims[n])
        for j in range(Cp.dims[n]):
            m.columns[j][c_block + j] = 1
        incl_maps[n] = m
    proj = ChainMapRep("CONE_PROJ", cone, C, 1, proj_maps, chain_sign=-1)
    incl = ChainMapRep("CONE_INCL", Cp, cone, 0, incl_maps)
    return MappingCone(cone, proj, incl, F)


def cone_pair_map(src: MappingCone, tgt: MappingCone, V: ChainMapRep,
                  W: ChainMapRep, kind="CONE_PAIR") -> ChainMapRep:
    """Blockwise map cone(f) -> cone(g) from a commuting square (V, W).

    V maps the sources of f and g, W the targets, both with the same shift s;
    the pair sends M_n = C_{n-1} (+) C'_n to N_{n-s} componentwise. It is a
    chain map whenever V and W are and g o V = W o f.
    """
    if V.shift != W.shift:
        raise ValueError("mismatched shifts in cone pair")
    s = V.shift
    maps = {}
    for n in range(src.cone.cutoff + 1):
        if n - s < 0 or n - s > tgt.cone.cutoff:
            continue
        vs = n - 1
        if n not in W.maps:
            continue
        c_block_src = V.source.dims[n - 1] if n >= 1 else 0
        c_block_tgt = V.target.dims[n - 1 - s] if n - s >= 1 else 0
        # a missing V component is only acceptable when its target block is
        # empty (the component is then the zero map into nothing)
        if vs >= 0 and vs not in V.maps and c_block_src and c_block_tgt:
            continue
        rows = tgt.cone.dims[n - s]
        mat = SparseMatrix(rows, src.cone.dims[n])
        if n >= 1 and vs in V.maps:
            vm = V.maps[vs]
            for j in range(c_block_src):
                for i, val in vm.columns[j].items():
                    mat.columns[j][i] = val
        wm = W.maps[n]
        for j in range(W.source.dims[n]):
            for i, val in wm.columns[j].items():
                mat.columns[c_block_src + j][c_block_tgt + i] = val
        maps[n] = mat
    return ChainMapRep(kind, src.cone, tgt.cone, s, maps)


def exactness_check(matrices):
    """Exactness of V_0 -> V_1 -> ... at every internal node.

    Each node checks composite = 0 and rank(incoming) = nullity(outgoing).
    Returns a list of per-node dicts with the computed numbers.
    """
    for a, b in zip(matrices, matrices[1:]):
        if b.cols != a.rows:
            raise ValueError("sequence not composable: %dx%d then %dx%d"
                             % (a.rows, a.cols, b.rows, b.cols))
    report = []
    for idx in range(len(matrices) - 1):
        fin, fout = matrices[idx], matrices[idx + 1]
        composite_zero = fout.matmul(fin).is_zero()
        rank_in = rank_only(fin)
        nullity_out = fout.cols - rank_only(fout)
        report.append({
            "node": idx + 1,
            "composite_zero": composite_zero,
            "rank_in": rank_in,
            "nullity_out": nullity_out,
            "exact": composite_zero and rank_in == nullity_out,
        })
    return report


def les_of_cone(mc: MappingCone, top_degree: int):
    """Long exact sequence of a cone, from H_top(source) down to H_0(cone) -> 0.

    Returns (matrices, labels): the alternating induced maps f_*, incl_*, and
    the connecting map (induced by the cone projection), terminated by the
    zero map out of H_0(cone) so exactness at the tail is checked too.
    """
    F = mc.of
    mats = []
    labels = []
    for n in range(top_degree, -1, -1):
        mats.append(induced_map(F, n))
        labels.append("H_%d(src) -> H_%d(tgt)" % (n, n))
        mats.append(induced_map(mc.incl, n))
        labels.append("H_%d(tgt) -> H_%d(cone)" % (n, n))
        if n >= 1:
            mats.append(induced_map(mc.proj, n))
            labels.append("H_%d(cone) -> H_%d(src)" % (n, n - 1))
    tail = SparseMatrix(0, mc.cone.homology(0).betti)
    mats.append(tail)
    labels.append("H_0(cone) -> 0")
    return mats, labels
