"""Samplers for Wigner, Laplacian, and block-diagonal Laplacian matrices.

Reproducibility contract
------------------------
Draw order is fixed and documented: the n(n-1)/2 off-diagonal entries are
drawn as one vector in row-major order over pairs (i, j) with i < j, i.e.
(0,1), (0,2), ..., (0,n-1), (1,2), ... The diagonal of X is generated as
zero: the Laplacian diagonal L_ii = sum_{j != i} X_ij never sees X_ii, so
generating it would only waste draws and misalign streams.

Each replicate r of a campaign gets its own substream seed

    substream_seed(master, r) = splitmix64(master + (r + 1) * GOLDEN)

where splitmix64 is the standard 64-bit avalanche finalizer and GOLDEN is
the SplitMix increment 0x9E3779B97F4A7C15. The map is bijective in r, so
distinct replicates always get distinct substream seeds. The substream
seed feeds numpy's PCG64 bit generator. Block b of a block matrix derives
its stream the same way from the replicate's seed, except k = 1, which is
the plain sampler unchanged.

Variance scaling sigma != 1 is applied by post-multiplication (L <- sigma
* L), never by re-parameterizing the entry distribution, so substreams
stay aligned across sigma values.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import SymmetricMatrix, packed_length

__all__ = [
    "EntryDistribution",
    "SeedSpec",
    "BlockSpec",
    "substream_seed",
    "sample_wigner_offdiag",
    "laplacian_of",
    "sample_laplacian",
    "sample_laplacian_diagonal",
    "sample_block_laplacian",
    "dump_matrix",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

_SQRT3 = 1.7320508075688772


def _splitmix64(z):
    """Standard SplitMix64 avalanche finalizer (bijective on 64 bits)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream_seed(master_seed, replicate):
    """Derived 64-bit seed for one replicate (bit-exact, documented)."""
    if not 0 <= master_seed <= _MASK64:
        raise ValueError("master seed must fit in 64 unsigned bits")
    if replicate < 0:
        raise ValueError("replicate index must be nonnegative")
    return _splitmix64(master_seed + (replicate + 1) * _GOLDEN)


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus the substream derivation rule."""

    master_seed: int

    def __post_init__(self):
        if not 0 <= self.master_seed <= _MASK64:
            raise ValueError("master seed must fit in 64 unsigned bits")

    def substream(self, replicate):
        return substream_seed(self.master_seed, replicate)


class EntryDistribution:
    """Zero-mean unit-variance entry law for off-diagonal entries.

    Kinds: ``gaussian`` (standard normal), ``rademacher`` (+-1 with equal
    probability) and ``uniform`` (uniform on [-sqrt(3), sqrt(3)]).
    """

    KINDS = ("gaussian", "rademacher", "uniform")

    __slots__ = ("kind",)

    def __init__(self, kind):
        if kind not in self.KINDS:
            raise ValueError(
                f"unknown entry distribution {kind!r}; expected one of {self.KINDS}"
            )
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("EntryDistribution is immutable")

    def __repr__(self):
        return f"EntryDistribution({self.kind!r})"

    def __eq__(self, other):
        return isinstance(other, EntryDistribution) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)

    def draw(self, rng, size):
        """`size` i.i.d. draws from the entry law."""
        if self.kind == "gaussian":
            return rng.standard_normal(size)
        if self.kind == "rademacher":
            return rng.integers(0, 2, size).astype(np.float64) * 2.0 - 1.0
        return rng.uniform(-_SQRT3, _SQRT3, size)


@dataclass(frozen=True)
class BlockSpec:
    """k diagonal blocks of equal size n/k."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"block count must be >= 1, got {self.k}")
        if self.n % self.k != 0:
            raise ValueError(f"block count {self.k} does not divide order {self.n}")
        if self.n // self.k < 2:
            raise ValueError(
                f"blocks of size {self.n // self.k} are too small (need >= 2)"
            )

    @property
    def block_size(self):
        return self.n // self.k


def _as_dist(dist):
    if isinstance(dist, EntryDistribution):
        return dist
    return EntryDistribution(dist)


def _offdiag_draws(n, dist, seed):
    """The replicate's draw vector, row-major over i < j."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return _as_dist(dist).draw(rng, n * (n - 1) // 2)


def _offdiag_packed_positions(n):
    """Packed offsets of the row-major i < j traversal (stored at (j, i))."""
    iu, ju = np.triu_indices(n, 1)
    return ju * (ju + 1) // 2 + iu


def sample_wigner_offdiag(n, dist, seed):
    """Symmetric matrix with i.i.d. off-diagonal entries and zero diagonal.

    Parameters
    ----------
    n : int
        Order, at least 2.
    dist : EntryDistribution or str
        Entry law.
    seed : int
        Substream seed (already derived; see module docstring).

    Returns
    -------
    SymmetricMatrix
    """
    if n < 2:
        raise ValueError(f"order must be >= 2 for off-diagonal sampling, got {n}")
    draws = _offdiag_draws(n, dist, seed)
    data = np.zeros(packed_length(n))
    data[_offdiag_packed_positions(n)] = draws
    return SymmetricMatrix(n, data)


def laplacian_of(x):
    """Laplacian L of a symmetric matrix: L_ij = -X_ij off the diagonal,
    L_ii = sum_j X_ij (row sums; the X_ii term cancels algebraically).

    Row sums of L vanish to 1e-12 * n * max|X_ij|: the diagonal is
    accumulated with compensated (Kahan) summation, vectorized over rows.
    """
    if not np.all(np.isfinite(x.data)):
        raise ValueError("matrix has non-finite entries")
    n = x.n
    dense = x.to_dense()
    idx = np.arange(n)
    dense[idx, idx] = 0.0  # L_ii never sees X_ii; cancel it exactly
    total = np.zeros(n)
    carry = np.zeros(n)
    for j in range(n):
        y = dense[:, j] - carry
        t = total + y
        carry = (t - total) - y
        total = t
    data = -x.data
    data[idx * (idx + 1) // 2 + idx] = total
    return SymmetricMatrix(n, data)


def sample_laplacian(n, dist, seed):
    """Laplacian of a sampled Wigner matrix; consumes exactly n(n-1)/2
    draws from the substream."""
    return laplacian_of(sample_wigner_offdiag(n, dist, seed))


def sample_laplacian_diagonal(n, dist, seed):
    """Diagonal of ``sample_laplacian(n, dist, seed)`` without building
    the matrix.

    Consumes the same draw vector in the same order, so it matches the
    full path's diagonal to rounding (different summation order: index
    sums via bincount instead of the dense compensated sweep), which the
    tests pin at 1e-10 * n * max|X|. The fast route for campaigns that
    only need max_i L_ii.
    """
    if n < 2:
        raise ValueError(f"order must be >= 2 for off-diagonal sampling, got {n}")
    draws = _offdiag_draws(n, dist, seed)
    iu, ju = np.triu_indices(n, 1)
    return np.bincount(iu, weights=draws, minlength=n) + np.bincount(
        ju, weights=draws, minlength=n
    )


def sample_block_laplacian(spec, dist, seed):
    """Block-diagonal Laplacian; block b lives on index range
    [b*n/k, (b+1)*n/k) and is an independent Laplacian drawn from the
    substream ``substream_seed(seed, b)``. Off-block entries are exactly
    zero. With k = 1 this is ``sample_laplacian`` on the same seed.
    """
    if not isinstance(spec, BlockSpec):
        raise TypeError("spec must be a BlockSpec")
    if spec.k == 1:
        return sample_laplacian(spec.n, dist, seed)
    m = spec.block_size
    il, jl = np.tril_indices(m)
    data = np.zeros(packed_length(spec.n))
    for b in range(spec.k):
        block = sample_laplacian(m, dist, substream_seed(seed, b))
        base = b * m
        gi = il + base
        data[gi * (gi + 1) // 2 + (jl + base)] = block.data
    return SymmetricMatrix(spec.n, data)


def scale_matrix(a, sigma):
    """Post-multiplication by sigma (the variance-scaling convention)."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if sigma == 1.0:
        return a
    return SymmetricMatrix(a.n, a.data * sigma)


def dump_matrix(a, stream):
    """Plain-text debug dump: one row per line, entries space-separated,
    17 significant digits (enough to round-trip float64)."""
    dense = a.to_dense()
    for row in dense:
        stream.write(" ".join(f"{v:.17g}" for v in row))
        stream.write("\n")
