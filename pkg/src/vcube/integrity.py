"""Greedy sphere-peeling for hypercube integrity upper bounds.

The radius r0 = floor(n/2 - alpha*sqrt(n)) comes from solving
exp(-2*alpha^2)/alpha = sqrt(ln n)/sqrt(n).  Peeling repeatedly picks a
center whose radius-r0 sphere is cheap relative to its ball within the
still-alive family, removes the ball, and charges only the sphere to the
separator.  The full transcript is a certificate that an independent
audit can re-verify from scratch.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cube import (
    Family,
    _ball_bits,
    _byte_len,
    _component_index_lists,
    _layer_bits,
    binom_leq,
    flood_component_sizes,
    format_mask,
    hamming,
    layer,
    log_binom,
    log_binom_leq,
    max_dim,
    parse_mask,
    translate_bits,
)
from .errors import (
    BudgetError,
    DomainError,
    ParseError,
    SolverError,
    VerificationError,
)

RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class RadiusParams:
    """Solved deletion radius for one dimension."""

    n: int
    alpha: float
    r0: int
    residual: float


@dataclass(frozen=True)
class PeelConfig:
    """Sampler settings: candidate centers per step and the RNG seed."""

    samples: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.samples < 0:
            raise DomainError(f"samples must be >= 0, got {self.samples}")


@dataclass(frozen=True)
class PeelStep:
    index: int
    center: int
    ball_hits: int
    sphere_hits: int
    candidates_sampled: int


@dataclass(frozen=True)
class IntegrityCertificate:
    """Complete peel transcript plus the claimed integrity upper bound."""

    params: RadiusParams
    config: PeelConfig
    steps: Tuple[PeelStep, ...]
    separator: Family
    separator_size: int
    max_component: int
    value: int

    @property
    def n(self) -> int:
        return self.params.n


def _radius_gap(alpha: float, target: float) -> float:
    return math.exp(-2.0 * alpha * alpha) / alpha - target


def solve_radius(n: int) -> RadiusParams:
    """Bisect the radius equation; the gap function is strictly decreasing."""
    if n < 3:
        raise DomainError(f"radius solver needs n >= 3, got n={n}")
    target = math.sqrt(math.log(n)) / math.sqrt(n)
    lo, hi = 1e-6, math.sqrt(math.log(n))
    if _radius_gap(lo, target) <= 0 or _radius_gap(hi, target) >= 0:
        raise SolverError(f"no sign change on [{lo}, {hi}] for n={n}")
    alpha = lo
    for _ in range(500):
        alpha = 0.5 * (lo + hi)
        gap = _radius_gap(alpha, target)
        if abs(gap) <= RESIDUAL_TOL:
            break
        if gap > 0:
            lo = alpha
        else:
            hi = alpha
    residual = abs(_radius_gap(alpha, target))
    if residual > RESIDUAL_TOL:
        raise SolverError(
            f"bisection stalled at residual {residual:.3e} for n={n}"
        )
    r0 = math.floor(n / 2 - alpha * math.sqrt(n))
    if r0 < 0:
        r0 = 0
    if r0 < 2:
        warnings.warn(
            f"deletion radius r0={r0} for n={n}; peeling degrades toward "
            f"single-vertex removal",
            stacklevel=2,
        )
    return RadiusParams(n=n, alpha=alpha, r0=r0, residual=residual)


def census(family: Family, x: int, r0: int) -> Tuple[int, int]:
    """(|ball ∩ F|, |sphere ∩ F|) at radius r0 around x."""
    n = family.n
    if not 0 <= r0 <= n:
        raise DomainError(f"radius r0={r0} outside [0, {n}]")
    shifted = translate_bits(family.bits, x, n)
    ball_hits = (shifted & _ball_bits(n, r0)).bit_count()
    sphere_hits = (shifted & _layer_bits(n, r0)).bit_count()
    return ball_hits, sphere_hits


def _select_bit(bits: int, n: int, j: int) -> int:
    return Family(n, bits).select(j)


def _sparse_census_limit(n: int) -> int:
    """Live-member count under which scanning a member list beats
    translating the full 2^n-bit vector (measured crossover ~ n*2^n/1000).
    Both census paths count exactly, so the switch never changes a
    certificate."""
    return (n << n) >> 10


def _choose_center(
    alive: int,
    alive_count: int,
    n: int,
    r0: int,
    samples: int,
    rng: random.Random,
) -> Tuple[int, int, int]:
    """Argmin of sphere/ball over sampled centers plus one member of F.

    Candidates whose ball misses F entirely rank last so the returned
    center always removes at least one vertex; ties break toward the
    numerically smallest mask.  Ratios compare exactly as fractions.
    """
    ball0 = _ball_bits(n, r0)
    sphere0 = _layer_bits(n, r0)
    members = None
    if alive_count <= _sparse_census_limit(n):
        members = list(Family(n, alive))
    pool = [rng.getrandbits(n) for _ in range(samples)]
    if members is None:
        pool.append(_select_bit(alive, n, rng.randrange(alive_count)))
    else:
        pool.append(members[rng.randrange(alive_count)])
    best = None
    for x in pool:
        if members is None:
            shifted = translate_bits(alive, x, n)
            b = (shifted & ball0).bit_count()
            s = (shifted & sphere0).bit_count()
        else:
            b = s = 0
            for v in members:
                d = (v ^ x).bit_count()
                if d <= r0:
                    b += 1
                    if d == r0:
                        s += 1
        key = (b == 0, Fraction(s, b if b else 1), x)
        if best is None or key < best[0]:
            best = (key, x, b, s)
    _, x, b, s = best
    return x, b, s


def choose_center(
    family: Family, r0: int, cfg: PeelConfig, rng: Optional[random.Random] = None
) -> int:
    """Public face of the center chooser: returns the winning mask."""
    if not family.bits:
        raise DomainError("cannot choose a center for the empty family")
    if rng is None:
        rng = random.Random(cfg.seed)
    x, _, _ = _choose_center(
        family.bits, family.size, family.n, r0, cfg.samples, rng
    )
    return x


def _max_component_via_bfs(bits: int, n: int) -> int:
    best = 0
    for comp in _component_index_lists(bits, n):
        if len(comp) > best:
            best = len(comp)
    return best


def peel(n: int, cfg: PeelConfig = PeelConfig()) -> IntegrityCertificate:
    """Run the greedy sphere-peeling process to completion.

    Deterministic for a fixed (n, cfg): one RNG seeded once drives every
    sampling decision.  The per-step ball removals partition the cube, so
    the loop terminates after at most 2^n steps.
    """
    if n < 3:
        raise DomainError(f"peeling needs n >= 3, got n={n}")
    if n > max_dim():
        raise DomainError(f"n={n} is over the dimension cap {max_dim()}")
    params = solve_radius(n)
    r0 = params.r0
    ball0 = _ball_bits(n, r0)
    sphere0 = _layer_bits(n, r0)
    rng = random.Random(cfg.seed)
    alive = (1 << (1 << n)) - 1
    alive_count = 1 << n
    sep = 0
    steps: List[PeelStep] = []
    while alive:
        x, ball_hits, sphere_hits = _choose_center(
            alive, alive_count, n, r0, cfg.samples, rng
        )
        sep |= translate_bits(sphere0, x, n) & alive
        alive &= ~translate_bits(ball0, x, n)
        alive_count -= ball_hits
        steps.append(
            PeelStep(
                index=len(steps),
                center=x,
                ball_hits=ball_hits,
                sphere_hits=sphere_hits,
                candidates_sampled=cfg.samples + 1,
            )
        )
    separator = Family(n, sep)
    leftover = sep ^ ((1 << (1 << n)) - 1)
    max_comp = _max_component_via_bfs(leftover, n)
    return IntegrityCertificate(
        params=params,
        config=cfg,
        steps=tuple(steps),
        separator=separator,
        separator_size=separator.size,
        max_component=max_comp,
        value=separator.size + max_comp,
    )


def verify_certificate(cert: IntegrityCertificate) -> int:
    """Re-derive the certificate's claims from scratch.

    Recomputes the components left by the separator, checks the size cap
    and per-component ball containment against the recorded centers, and
    cross-checks every count in the transcript.  Raises VerificationError
    naming the first offender; returns the audited value.
    """
    n = cert.n
    params = cert.params
    target = math.sqrt(math.log(n)) / math.sqrt(n)
    if abs(_radius_gap(params.alpha, target)) > 1e-9:
        raise VerificationError(
            f"alpha={params.alpha!r} does not solve the radius equation"
        )
    if params.r0 != max(0, math.floor(n / 2 - params.alpha * math.sqrt(n))):
        raise VerificationError(f"r0={params.r0} contradicts alpha")
    ball_total = 0
    sphere_total = 0
    for i, step in enumerate(cert.steps):
        if step.index != i:
            raise VerificationError(f"step {i} is out of order")
        if step.center < 0 or step.center >> n:
            raise VerificationError(f"step {i} center does not fit n={n}")
        if step.ball_hits < 1:
            raise VerificationError(f"step {i} removed no vertices")
        if step.sphere_hits > step.ball_hits:
            raise VerificationError(f"step {i} sphere exceeds its ball")
        ball_total += step.ball_hits
        sphere_total += step.sphere_hits
    if ball_total != 1 << n:
        raise VerificationError(
            f"ball removals sum to {ball_total}, expected 2^{n}"
        )
    sep = cert.separator
    if sep.n != n:
        raise VerificationError("separator dimension mismatch")
    if sep.size != cert.separator_size:
        raise VerificationError(
            f"separator holds {sep.size} vertices, header claims "
            f"{cert.separator_size}"
        )
    if sep.size != sphere_total:
        raise VerificationError(
            f"separator holds {sep.size} vertices but the steps charged "
            f"{sphere_total} sphere hits"
        )
    cap = binom_leq(n, params.r0)
    centers = [s.center for s in cert.steps]
    leftover = sep.bits ^ ((1 << (1 << n)) - 1)
    max_comp = 0
    for comp in _component_index_lists(leftover, n):
        if len(comp) > max_comp:
            max_comp = len(comp)
        if len(comp) > cap:
            raise VerificationError(
                f"component seeded at {format_mask(comp[0], n)} has "
                f"{len(comp)} vertices, over the C(n,<=r0) cap {cap}"
            )
        rep = comp[0]
        contained = False
        for c in centers:
            if hamming(rep, c) > params.r0:
                continue
            if all(hamming(v, c) <= params.r0 for v in comp):
                contained = True
                break
        if not contained:
            raise VerificationError(
                f"component seeded at {format_mask(rep, n)} fits no "
                f"recorded center's radius-{params.r0} ball"
            )
    audited = sep.size + max_comp
    if max_comp != cert.max_component or audited != cert.value:
        raise VerificationError(
            f"audited value {audited} (separator {sep.size} + component "
            f"{max_comp}) contradicts the claimed {cert.value}"
        )
    return audited


# ---------------------------------------------------------------------------
# Exact oracle and baselines.
# ---------------------------------------------------------------------------


def exact_integrity(n: int) -> int:
    """I(Q_n) by exhausting removal sets in increasing size.

    Every candidate of size s scores at least s+1 while vertices remain,
    so sizes at or past the incumbent are skipped entirely.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got n={n}")
    if n > 4:
        raise BudgetError(
            f"exact integrity enumerates 2^(2^n) removal sets; n={n} is "
            f"over the n <= 4 guard"
        )
    size = 1 << n
    full = (1 << size) - 1
    best = size  # removing everything
    for s in range(size):
        if s + 1 >= best:
            break
        k_bits = (1 << s) - 1
        limit = 1 << size
        v = k_bits
        while v < limit:
            alive = full ^ v
            comp_sizes = flood_component_sizes(alive, n)
            val = s + max(comp_sizes)
            if val < best:
                best = val
            if s == 0:
                break
            c = v & -v
            r = v + c
            v = r | ((v ^ r) >> (c.bit_length() + 1))
    return best


def middle_layer_baseline(n: int) -> int:
    """Integrity value of the trivial cut: remove the middle layer.

    Measured by actual removal and component sizing, not a closed form.
    """
    if n < 2:
        raise DomainError(f"baseline needs n >= 2, got n={n}")
    cut = layer(n, n // 2)
    alive = cut.complement().bits
    sizes = flood_component_sizes(alive, n)
    return cut.size + (max(sizes) if sizes else 0)


# ---------------------------------------------------------------------------
# Log-domain density audit.
#
# ball_ratio(n)   = C(n,<=r0) * sqrt(n) / (2^n * sqrt(ln n))
# sphere_ratio(n) = C(n,r0)   * n       / (2^n * ln n)
# Both should sit in a bounded band if r0 tracks the intended scaling.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityRow:
    n: int
    alpha: float
    r0: int
    ball_ratio: float
    sphere_ratio: float


def density_audit(dims: Sequence[int]) -> List[DensityRow]:
    """Normalized ball/sphere densities at the solved radius, per n."""
    rows = []
    for n in dims:
        if n < 8:
            raise DomainError(f"density audit needs n >= 8, got n={n}")
        params = solve_radius(n)
        ln2 = math.log(2)
        lln = math.log(math.log(n))
        log_ball = (
            log_binom_leq(n, params.r0)
            + 0.5 * math.log(n)
            - n * ln2
            - 0.5 * lln
        )
        log_sphere = (
            log_binom(n, params.r0) + math.log(n) - n * ln2 - lln
        )
        rows.append(
            DensityRow(
                n=n,
                alpha=params.alpha,
                r0=params.r0,
                ball_ratio=math.exp(log_ball),
                sphere_ratio=math.exp(log_sphere),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Certificate serialization.
#
#   n=<n> alpha=<repr> r0=<r0> seed=<seed> T=<samples>
#   <i> <center bitstring> <ball_hits> <sphere_hits>     (one per step)
#   separator=<hex characteristic vector>
#   value=<claimed value>
# ---------------------------------------------------------------------------


def certificate_to_text(cert: IntegrityCertificate) -> str:
    lines = [
        f"n={cert.n} alpha={cert.params.alpha!r} r0={cert.params.r0} "
        f"seed={cert.config.seed} T={cert.config.samples}"
    ]
    for s in cert.steps:
        lines.append(
            f"{s.index} {format_mask(s.center, cert.n)} "
            f"{s.ball_hits} {s.sphere_hits}"
        )
    width = max(1, _byte_len(cert.n) * 2)
    lines.append(f"separator={cert.separator.bits:0{width}x}")
    lines.append(f"value={cert.value}")
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> IntegrityCertificate:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty certificate", lineno=1)
    head = dict()
    for tok in lines[0].split():
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}", lineno=1)
        key, val = tok.split("=", 1)
        head[key] = val
    try:
        n = int(head["n"])
        alpha = float(head["alpha"])
        r0 = int(head["r0"])
        seed = int(head["seed"])
        samples = int(head["T"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad header: {exc}", lineno=1) from None
    target = math.sqrt(math.log(n)) / math.sqrt(n) if n >= 3 else math.inf
    params = RadiusParams(
        n=n, alpha=alpha, r0=r0, residual=abs(_radius_gap(alpha, target))
    )
    steps = []
    sep_bits = None
    value = None
    lineno = 1
    for lineno, ln in enumerate(lines[1:], start=2):
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("separator="):
            try:
                sep_bits = int(ln[len("separator=") :], 16)
            except ValueError:
                raise ParseError("bad separator hex", lineno=lineno) from None
            continue
        if ln.startswith("value="):
            try:
                value = int(ln[len("value=") :])
            except ValueError:
                raise ParseError("bad claimed value", lineno=lineno) from None
            continue
        parts = ln.split()
        if len(parts) != 4:
            raise ParseError("expected 'i center ball sphere'", lineno=lineno)
        if sep_bits is not None:
            raise ParseError("step line after separator", lineno=lineno)
        try:
            idx = int(parts[0])
            center = parse_mask(parts[1], n)
            ball_hits = int(parts[2])
            sphere_hits = int(parts[3])
        except (ValueError, DomainError) as exc:
            raise ParseError(str(exc), lineno=lineno) from None
        steps.append(
            PeelStep(
                index=idx,
                center=center,
                ball_hits=ball_hits,
                sphere_hits=sphere_hits,
                candidates_sampled=samples + 1,
            )
        )
    if sep_bits is None or value is None:
        raise ParseError(
            "certificate truncated: missing separator or value", lineno=lineno
        )
    separator = Family(n, sep_bits)
    return IntegrityCertificate(
        params=params,
        config=PeelConfig(samples=samples, seed=seed),
        steps=tuple(steps),
        separator=separator,
        separator_size=separator.size,
        max_component=value - separator.size,
        value=value,
    )
