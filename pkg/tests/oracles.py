"""Independent brute-force oracles used to freeze expected values.

Everything here is computed from first principles with its own Fraction
arithmetic so that no production code path is trusted twice: Hom/Ext via
naive commuting-square systems, A_n structure via the interval model, the
translation-quiver shape via an explicit combinatorial construction.
"""
from fractions import Fraction


# ---------------------------------------------------------------------------
# naive rational linear algebra (independent of the package kernel)


def rref_rank(rows):
    """Rank by straightforward Gauss elimination over Fraction."""
    m = [list(map(Fraction, r)) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    for c in range(nc):
        piv = next((r for r in range(rank, nr) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(nr):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def kernel_dim(rows, ncols):
    if not rows:
        return ncols
    return ncols - rref_rank(rows)


# ---------------------------------------------------------------------------
# brute-force Hom and Ext over an explicit vertex window

def _as_entries(mat_entries):
    return [[Fraction(str(x)) for x in row] for row in mat_entries]


def hom_dim_brute(q, m, n, verts):
    """dim of natural transformations m -> n over the given vertices,
    assuming both objects vanish outside them."""
    verts = list(verts)
    offs, tot = {}, 0
    for v in verts:
        offs[v] = tot
        tot += n.dim(v) * m.dim(v)
    if tot == 0:
        return 0
    rows = []
    for v in verts:
        for a in q.out_arrows(v):
            if a.dst not in offs:
                continue
            A = _as_entries(n.mat(a).entries)   # n(src) -> n(dst)
            B = _as_entries(m.mat(a).entries)
            du, dw = a.src, a.dst
            # constraint: A * f_src - f_dst * B = 0
            for r in range(n.dim(dw)):
                for c in range(m.dim(du)):
                    row = [Fraction(0)] * tot
                    for k in range(n.dim(du)):
                        row[offs[du] + k * m.dim(du) + c] += A[r][k]
                    for k in range(m.dim(dw)):
                        row[offs[dw] + r * m.dim(dw) + k] -= B[k][c]
                    rows.append(row)
    return kernel_dim(rows, tot)


def ext_dim_brute(q, x, y, verts):
    """dim Ext(x, y) for fd objects supported inside verts, via the arrow
    cocycle complex: coker of d: Hom0 -> Hom1."""
    verts = list(verts)
    vset = set(verts)
    c0_idx, tot0 = {}, 0
    for v in verts:
        if x.dim(v) and y.dim(v):
            c0_idx[v] = tot0
            tot0 += y.dim(v) * x.dim(v)
    arrows = [a for v in verts for a in q.out_arrows(v)
              if a.dst in vset and x.dim(a.src) and y.dim(a.dst)]
    c1_idx, tot1 = {}, 0
    for a in arrows:
        c1_idx[a] = tot1
        tot1 += y.dim(a.dst) * x.dim(a.src)
    if tot1 == 0:
        return 0
    cols = []
    for v in verts:
        if v not in c0_idx:
            continue
        for r in range(y.dim(v)):
            for c in range(x.dim(v)):
                col = [Fraction(0)] * tot1
                for a in arrows:
                    Y = _as_entries(y.mat(a).entries)
                    X = _as_entries(x.mat(a).entries)
                    if a.src == v:
                        for rr in range(y.dim(a.dst)):
                            col[c1_idx[a] + rr * x.dim(a.src) + c] += Y[rr][r]
                    if a.dst == v:
                        for cc in range(x.dim(a.src)):
                            col[c1_idx[a] + r * x.dim(a.src) + cc] -= X[c][cc]
                cols.append(col)
    rank = rref_rank(cols) if cols else 0
    return tot1 - rank


# ---------------------------------------------------------------------------
# interval model for the equioriented A_n quiver 1 -> 2 -> ... -> n


def an_intervals(n):
    """All indecomposables of A_n as (a, b) support intervals."""
    return [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


def an_dims(iv, n):
    a, b = iv
    return tuple(1 if a <= v <= b else 0 for v in range(1, n + 1))


def an_is_projective(iv, n):
    return iv[1] == n


def an_is_injective(iv, n):
    return iv[0] == 1


def an_tau(iv, n):
    """tau of a non-projective interval."""
    a, b = iv
    assert b < n
    return (a + 1, b + 1)


def an_almost_split(iv, n):
    """(sub, middle_list, quot) for the sequence ending at a non-projective
    interval."""
    a, b = iv
    assert b < n
    sub = (a + 1, b + 1)
    middle = []
    if a + 1 <= b:
        middle.append((a + 1, b))
    if b + 1 <= n:
        middle.append((a, b + 1))
    return sub, middle, iv


def an_ar_arrows(n):
    """All AR-quiver arrows of A_n as interval pairs (src, dst)."""
    out = set()
    for iv in an_intervals(n):
        a, b = iv
        if b < n:
            for mid in an_almost_split(iv, n)[1]:
                out.add((mid, iv))      # middle -> quot
                out.add(((a + 1, b + 1), mid))  # sub -> middle
    return out


# ---------------------------------------------------------------------------
# the N x Q^op translation quiver for the inward ray preset
# (vertices of Q are 0,1,2,... with arrows n+1 -> n)


def nqop_truncation(depth):
    """Nodes (n, x) with hop level 2n + x <= depth, arrows raising the hop
    level by one, and tau pairs (n+1, x) -> (n, x).

    The node (n, x) corresponds to the interval payload [n, n + x]."""
    nodes = {(n, x) for n in range(depth + 1) for x in range(depth + 1)
             if 2 * n + x <= depth}
    arrows = set()
    for (n, x) in nodes:
        if (n, x + 1) in nodes:
            arrows.add(((n, x), (n, x + 1)))
        if x >= 1 and (n + 1, x - 1) in nodes:
            arrows.add(((n, x), (n + 1, x - 1)))
    taus = {((n, x), (n - 1, x)) for (n, x) in nodes
            if n >= 1 and (n - 1, x) in nodes}
    return nodes, arrows, taus


# ---------------------------------------------------------------------------
# independent Coxeter oracle for finite quivers


def path_counts(vertices, arrows):
    """counts[(x, y)] = number of paths x -> y, summing adjacency powers."""
    counts = {(x, y): Fraction(1 if x == y else 0)
              for x in vertices for y in vertices}
    step = {(x, y): Fraction(0) for x in vertices for y in vertices}
    for (s, d, _l) in arrows:
        step[(s, d)] += 1
    # counts = sum over k of step^k; quivers here are acyclic so k < |V|
    power = {k: v for k, v in step.items()}
    for _ in range(len(vertices)):
        for key in power:
            counts[key] += power[key]
        nxt = {(x, y): Fraction(0) for x in vertices for y in vertices}
        for x in vertices:
            for y in vertices:
                s = Fraction(0)
                for z in vertices:
                    s += power[(x, z)] * step[(z, y)]
                nxt[(x, y)] = s
        power = nxt
        if all(v == 0 for v in power.values()):
            break
    return counts


def coxeter_images(vertices, arrows, dims, inverse=False):
    """Apply Phi = -C^T C^{-1} (or its inverse) to a dim vector given in
    sorted vertex order; independent matrix arithmetic."""
    vs = sorted(vertices)
    n = len(vs)
    counts = path_counts(vs, arrows)
    C = [[counts[(vs[j], vs[i])] for j in range(n)] for i in range(n)]

    def matmul(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
                for i in range(n)]

    def matinv(A):
        aug = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)]
               for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return [row[n:] for row in aug]

    CT = [[C[j][i] for j in range(n)] for i in range(n)]
    phi = [[-x for x in row] for row in matmul(CT, matinv(C))]
    if inverse:
        phi = matinv(phi)
    vec = [Fraction(d) for d in dims]
    return tuple(sum(phi[i][j] * vec[j] for j in range(n)) for i in range(n))
