"""
Named verification suites. Every suite returns CheckResult lines in a
fixed order; randomized checks draw from ``random.Random(seed)``, seeded
afresh per suite so that ``all`` repeats the individual runs.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence

from .barcat import bar_ccc, delta, replacement
from .consequences import (
    CommMonoidPresentation,
    abelianization,
    enumerate_monoids,
    grothendieck_group,
    h1_of_bm,
    hocolim_preservation_check,
    james,
    james_tensor_prediction,
)
from .core import DEFAULT_LETTERS, DEFAULT_MAXDIM, DEFAULT_SEED, DEFAULT_TRIALS, CheckResult, Coefficients, Mode, Suite
from .exactalg import HomologyResult, homology_all
from .formats import Corpus, dump_wtuple
from .moorezeta import (
    MoorePath,
    bm_base,
    constant_path,
    ev,
    ev_degeneracy_coherence,
    ev_face_coherence,
    moore_add,
    pem_oplus,
    random_loop,
    same_trajectory,
    sample_times,
    zeta,
    zeta_loop,
)
from .simplicial import FinCategory, FinMonoid, FinSemigroup, adjoin_unit, chains, nerve, sphere, suspension
from .wconstruct import (
    SAMPLE_PARAMS,
    WTuple,
    eps_prime,
    epsilon,
    factorize,
    iota,
    is_indecomposable,
    normalize,
    plus_comparison,
    random_raw,
    random_wtuple,
    random_whisker,
    shrink,
    unit,
    wbar_complex,
    whisker_mul,
    whisker_q,
    whisker_section,
    whisker_unit,
    wmul,
)

Trial = Callable[[], Optional[str]]

SMALL = 4
WBAR_LETTERS = 4
MOORE_TRIALS = 1000
ZETA_PAIRS = 100
ZETA_SAMPLES = 24


@dataclass
class SuiteContext:
    corpus: Corpus
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    maxdim: int = DEFAULT_MAXDIM
    letters: int = DEFAULT_LETTERS

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def run_trials(check_id: str, count: int, trial: Trial) -> CheckResult:
    """Run ``trial`` until it reports a failure or ``count`` trials pass"""
    for k in range(count):
        failure = trial()
        if failure:
            return CheckResult(check_id=check_id, passed=False, details=f"trial {k}: {failure}")
    return CheckResult(check_id=check_id, passed=True, details=f"{count} trials")


def expect(check_id: str, ok: bool, details: str = "") -> CheckResult:
    return CheckResult(check_id=check_id, passed=ok, details=details)


def _is_acyclic_above_zero(hs: Sequence[HomologyResult], h0_rank: int) -> bool:
    return all(h.is_zero() for h in hs[1:]) and hs[0].betti == h0_rank and not hs[0].torsion


def _fmt(hs: Sequence[HomologyResult]) -> str:
    return " ".join(f"H{h.degree}={h}" for h in hs)


def small_grounds(corpus: Corpus) -> List[FinSemigroup]:
    grounds: List[FinSemigroup] = list(corpus.semigroups.values()) + list(corpus.monoids.values())
    return sorted((G for G in grounds if len(G) <= SMALL), key=lambda G: G.name)


def small_monoids(corpus: Corpus, size: int = SMALL) -> List[FinMonoid]:
    return sorted((M for M in corpus.monoids.values() if len(M) <= size), key=lambda M: M.name)


# ---------------------------------------------------------------------------
# W-bar and W


def _ground_laws(G: FinSemigroup, ctx: SuiteContext, rng: random.Random) -> List[CheckResult]:
    name = f"w-laws.{G.name}"
    show = dump_wtuple

    def rand() -> WTuple:
        return random_wtuple(G, rng)

    def assoc() -> Optional[str]:
        a, b, c = rand(), rand(), rand()
        lhs, rhs = wmul(wmul(a, b), c), wmul(a, wmul(b, c))
        return None if lhs == rhs else f"{show(lhs)} != {show(rhs)}"

    def confluence() -> Optional[str]:
        xs, ts = random_raw(G, rng)
        left, shuffled = normalize(G, xs, ts), normalize(G, xs, ts, rng=rng)
        return None if left == shuffled else f"{show(left)} != {show(shuffled)}"

    def eps_hom() -> Optional[str]:
        a, b = rand(), rand()
        return None if epsilon(wmul(a, b)) == G.mul(epsilon(a), epsilon(b)) else f"{show(a)} {show(b)}"

    def eps_shrink() -> Optional[str]:
        a, s = rand(), rng.choice(SAMPLE_PARAMS)
        if epsilon(shrink(a, s)) != epsilon(a):
            return f"{show(a)} at s={s}"
        return None if shrink(a, Fraction(0)) == iota(G, epsilon(a)) else f"h_0 {show(a)}"

    def freeness() -> Optional[str]:
        a = rand()
        parts = factorize(a)
        rebuilt = parts[0]
        for p in parts[1:]:
            rebuilt = wmul(rebuilt, p)
        ok = rebuilt == a and all(is_indecomposable(p) for p in parts)
        return None if ok else show(a)

    Gp = adjoin_unit(G)

    def plus() -> Optional[str]:
        a, b = rand(), rand()
        ok = plus_comparison(G, wmul(a, b), Gp) == wmul(plus_comparison(G, a, Gp), plus_comparison(G, b, Gp))
        ok = ok and epsilon(plus_comparison(G, a, Gp)) == epsilon(a) + 1
        return None if ok else f"{show(a)} {show(b)}"

    eps_iota = all(epsilon(iota(G, x)) == x for x in range(len(G)))
    return [
        run_trials(f"{name}.assoc", ctx.trials, assoc),
        run_trials(f"{name}.confluence", ctx.trials, confluence),
        expect(f"{name}.eps-iota", eps_iota, f"{len(G)} elements"),
        run_trials(f"{name}.eps-hom", ctx.trials, eps_hom),
        run_trials(f"{name}.eps-shrink", ctx.trials, eps_shrink),
        run_trials(f"{name}.free", ctx.trials, freeness),
        run_trials(f"{name}.plus", ctx.trials, plus),
    ]


def _monoid_laws(M: FinMonoid, ctx: SuiteContext, rng: random.Random) -> List[CheckResult]:
    name = f"w-laws.{M.name}"
    show = dump_wtuple
    e = unit(M)

    def rand_w() -> WTuple:
        return random_wtuple(M, rng, mode=Mode.MONOID)

    def assoc_w() -> Optional[str]:
        a, b, c = rand_w(), rand_w(), rand_w()
        lhs, rhs = wmul(wmul(a, b), c), wmul(a, wmul(b, c))
        return None if lhs == rhs else f"{show(lhs)} != {show(rhs)}"

    def unit_w() -> Optional[str]:
        a = rand_w()
        padded = wmul(a, iota(M, M.unit, Mode.MONOID))
        ok = wmul(e, a) == a == wmul(a, e) and padded == a
        return None if ok else show(a)

    def confluence_w() -> Optional[str]:
        xs, ts = random_raw(M, rng)
        left, shuffled = normalize(M, xs, ts, Mode.MONOID), normalize(M, xs, ts, Mode.MONOID, rng=rng)
        return None if left == shuffled else f"{show(left)} != {show(shuffled)}"

    def eps_bar() -> Optional[str]:
        a, b = random_wtuple(M, rng), random_wtuple(M, rng)
        ok = epsilon(a) == epsilon(eps_prime(a)) and eps_prime(wmul(a, b)) == wmul(eps_prime(a), eps_prime(b))
        return None if ok else f"{show(a)} {show(b)}"

    def whiskers() -> Optional[str]:
        u, v, w = random_whisker(M, rng), random_whisker(M, rng), random_whisker(M, rng)
        one = whisker_unit()
        if whisker_mul(M, whisker_mul(M, u, v), w) != whisker_mul(M, u, whisker_mul(M, v, w)):
            return f"associativity at {u} {v} {w}"
        if not whisker_mul(M, one, u) == u == whisker_mul(M, u, one):
            return f"unit at {u}"
        if whisker_q(M, whisker_mul(M, u, v)) != M.mul(whisker_q(M, u), whisker_q(M, v)):
            return f"q at {u} {v}"
        return None

    eps_iota = all(eps_prime(iota(M, x)) == iota(M, x, Mode.MONOID) for x in range(len(M)))
    section = all(
        whisker_mul(M, whisker_section(M, x), whisker_section(M, y)) == whisker_section(M, M.mul(x, y))
        for x, y in product(range(len(M)), repeat=2)
    )
    return [
        run_trials(f"{name}.w-assoc", ctx.trials, assoc_w),
        run_trials(f"{name}.w-unit", ctx.trials, unit_w),
        run_trials(f"{name}.w-confluence", ctx.trials, confluence_w),
        run_trials(f"{name}.eps-bar", ctx.trials, eps_bar),
        expect(f"{name}.eps-prime-iota", eps_iota, f"{len(M)} elements"),
        run_trials(f"{name}.whisker", ctx.trials, whiskers),
        expect(
            f"{name}.whisker-q-unit",
            whisker_q(M, whisker_unit()) == M.unit and section,
            "q(0) = e, section multiplicative",
        ),
    ]


def suite_w_laws(ctx: SuiteContext) -> List[CheckResult]:
    rng = ctx.rng()
    out: List[CheckResult] = []
    for G in small_grounds(ctx.corpus):
        out += _ground_laws(G, ctx, rng)
        if isinstance(G, FinMonoid):
            out += _monoid_laws(G, ctx, rng)
    return out


def suite_w_homology(ctx: SuiteContext) -> List[CheckResult]:
    out = []
    for G in small_grounds(ctx.corpus):
        for L in range(1, max(ctx.letters, WBAR_LETTERS) + 1):
            hs = homology_all(wbar_complex(G, L))
            out.append(expect(f"w-homology.{G.name}.L{L}", _is_acyclic_above_zero(hs, len(G)), _fmt(hs)))
    return out


# ---------------------------------------------------------------------------
# Moore loops and zeta


def random_coords(rng: random.Random, n: int, zero: Optional[int] = None) -> List[Fraction]:
    """Random barycentric coordinates t_0, ..., t_n, optionally with t_zero = 0"""
    weights = [Fraction(rng.randint(0, 6)) for _ in range(n + 1)]
    if zero is not None:
        weights[zero] = Fraction(0)
    if sum(weights) == 0:
        weights[(zero + 1) % (n + 1) if zero is not None else 0] = Fraction(1)
    total = sum(weights)
    return [w / total for w in weights]


def suite_moore(ctx: SuiteContext) -> List[CheckResult]:
    rng = ctx.rng()
    count = min(ctx.trials, MOORE_TRIALS)

    def loops(k: int) -> List[MoorePath]:
        return [random_loop(rng) for _ in range(k)]

    def assoc() -> Optional[str]:
        p, q, r = loops(3)
        lhs, rhs = moore_add(moore_add(p, q), r), moore_add(p, moore_add(q, r))
        if lhs.breakpoints() != rhs.breakpoints() or lhs.length != p.length + q.length + r.length:
            return "sum"
        return None

    def unital() -> Optional[str]:
        (p,) = loops(1)
        c = constant_path(p.start)
        ok = moore_add(c, p).breakpoints() == p.breakpoints() == moore_add(p, c).breakpoints()
        return None if ok else "unit"

    def face() -> Optional[str]:
        n = rng.randint(1, 3)
        i = rng.randint(0, n)
        ws, t = loops(n), random_coords(rng, n, zero=i)
        return None if ev_face_coherence(ws, t, i) else f"d_{i} with t={[str(x) for x in t]}"

    def degeneracy() -> Optional[str]:
        n = rng.randint(1, 3)
        i = rng.randint(0, n)
        ws, t = loops(n), random_coords(rng, n)
        split = Fraction(rng.randint(0, 4), 4)
        return None if ev_degeneracy_coherence(ws, t, i, split) else f"s_{i} split {split}"

    def endpoints() -> Optional[str]:
        n = rng.randint(1, 3)
        ws = loops(n)
        first = [Fraction(1)] + [Fraction(0)] * n
        last = [Fraction(0)] * n + [Fraction(1)]
        base = ws[0].start
        return None if ev(ws, first) == base == ev(ws, last) else "endpoint"

    return [
        run_trials("moore.assoc", count, assoc),
        run_trials("moore.unit", count, unital),
        run_trials("moore.ev-face", count, face),
        run_trials("moore.ev-degeneracy", count, degeneracy),
        run_trials("moore.ev-endpoints", count, endpoints),
    ]


def normal_forms(M: FinSemigroup, max_letters: int = 3) -> List[WTuple]:
    """Every normal form with at most ``max_letters`` letters and parameters from SAMPLE_PARAMS"""
    seen = {}
    for k in range(1, max_letters + 1):
        for word in product(range(len(M)), repeat=k):
            for params in product(SAMPLE_PARAMS, repeat=k - 1):
                a = normalize(M, word, params)
                seen.setdefault((a.entries, a.params), a)
    return list(seen.values())


def suite_zeta(ctx: SuiteContext) -> List[CheckResult]:
    rng = ctx.rng()
    out: List[CheckResult] = []
    for M in small_monoids(ctx.corpus, 3):
        name = f"zeta.{M.name}"
        tuples = normal_forms(M)
        bad = [a for a in tuples if zeta(a).endpoint() != epsilon(a)]
        out.append(expect(f"{name}.endpoint", not bad, f"{len(tuples)} tuples" if not bad else dump_wtuple(bad[0])))

        def oplus() -> Optional[str]:
            a, b = random_wtuple(M, rng, 3), random_wtuple(M, rng, 3)
            za, zb, zab = zeta(a), zeta(b), zeta(wmul(a, b))
            if not same_trajectory(zab.path, pem_oplus(za, zb).path, sample_times(zab.length, ZETA_SAMPLES)):
                return f"oplus at {dump_wtuple(a)} {dump_wtuple(b)}"
            loop, summed = zeta_loop(wmul(a, b)), moore_add(zeta_loop(a), zeta_loop(b))
            if not same_trajectory(loop, summed, sample_times(loop.length, ZETA_SAMPLES)):
                return f"projection at {dump_wtuple(a)} {dump_wtuple(b)}"
            return None

        def length() -> Optional[str]:
            t1, t2 = Fraction(rng.randint(1, 12), 12), Fraction(rng.randint(1, 12), 12)
            a = normalize(M, [rng.randrange(len(M)) for _ in range(3)], [t1, t2])
            return None if zeta(a).length == t1 + t2 + 1 else f"length at t=({t1}, {t2})"

        def ev_loops() -> Optional[str]:
            n = rng.randint(1, 3)
            i = rng.randint(0, n)
            ws = [zeta_loop(random_wtuple(M, rng, 3)) for _ in range(n)]
            if ws[0].start != bm_base(M):
                return "zeta loops start at the base vertex"
            t = random_coords(rng, n, zero=i)
            return None if ev_face_coherence(ws, t, i) else f"d_{i}"

        pairs = min(ctx.trials, ZETA_PAIRS)
        out += [
            run_trials(f"{name}.oplus", pairs, oplus),
            run_trials(f"{name}.length", pairs, length),
            run_trials(f"{name}.ev-face", pairs, ev_loops),
        ]
    return out


# ---------------------------------------------------------------------------
# James, group completion, hocolim, bar


def suite_james(ctx: SuiteContext) -> List[CheckResult]:
    out = []
    for L in range(1, SMALL + 1):
        top = L + 1
        X = sphere(1, top)
        hs = homology_all(chains(james(X, L, top)), upto=L)
        ok = all(h.betti == 1 and not h.torsion for h in hs)
        predicted = james_tensor_prediction(X, L, top, Coefficients.Q)[: L + 1]
        ok = ok and [h.betti for h in predicted] == [h.betti for h in hs]
        out.append(expect(f"james.S1.L{L}", ok, _fmt(hs)))

    spaces = [sphere(0, ctx.maxdim), sphere(1, ctx.maxdim), nerve(ctx.corpus.monoid("z2"), ctx.maxdim)]
    for X in spaces:
        below = homology_all(chains(X))
        above = homology_all(chains(suspension(X)))
        ok = all(
            (above[n].reduced().betti, above[n].torsion) == (below[n - 1].reduced().betti, below[n - 1].torsion)
            for n in range(1, ctx.maxdim)
        )
        out.append(expect(f"james.suspension.{X.name}", ok, _fmt(above[: ctx.maxdim])))
    return out


def suite_grpcomp(ctx: SuiteContext) -> List[CheckResult]:
    out = []
    monoids = [M for n in range(1, SMALL + 1) for M in enumerate_monoids(n)] + small_monoids(ctx.corpus)
    for M in monoids:
        lhs, rhs = h1_of_bm(M), grothendieck_group(abelianization(M))
        out.append(expect(f"grpcomp.{M.name}", lhs == rhs, f"H1={lhs} K={rhs}"))
    for bound in range(1, SMALL + 1):
        g = CommMonoidPresentation.truncated_free(bound).group()
        out.append(expect(f"grpcomp.N{bound}", g.rank == 1 and not g.torsion, str(g)))
    return out


def suite_hocolim(ctx: SuiteContext) -> List[CheckResult]:
    groups = [M for M in small_monoids(ctx.corpus) if M.is_group()]
    out: List[CheckResult] = []
    for i, G1 in enumerate(groups):
        for G2 in groups[i:]:
            out += hocolim_preservation_check(G1, G2).checks()
    for name in sorted(ctx.corpus.diagrams):
        D = ctx.corpus.diagram(name, min(ctx.maxdim, 3))
        RD, collapse = replacement(D)
        for a in D.shape.objects:
            top = D.maxdim - 1
            lhs = homology_all(chains(RD.at(a)), upto=top)
            rhs = homology_all(chains(D.at(a)), upto=top)
            collapse[a].validate()
            out.append(expect(f"hocolim.replacement.{name}.{a}", lhs == rhs, _fmt(lhs)))
    return out


def suite_bar_delta(ctx: SuiteContext) -> List[CheckResult]:
    categories: List[FinCategory] = [ctx.corpus.categories[k] for k in sorted(ctx.corpus.categories)]
    categories += [M.as_category() for M in small_monoids(ctx.corpus, 2)]
    out = []
    for C in categories:
        bars = bar_ccc(C, ctx.maxdim)
        maps = delta(C, ctx.maxdim, bars)
        for b in C.objects:
            for a in C.objects:
                hs = homology_all(chains(bars.at(f"{b},{a}")), upto=ctx.maxdim - 1)
                maps[(b, a)].validate()
                ok = _is_acyclic_above_zero(hs, len(C.hom(a, b)))
                out.append(expect(f"bar-delta.{C.name}.{b},{a}", ok, _fmt(hs)))
    return out


SUITES: Dict[Suite, Callable[[SuiteContext], List[CheckResult]]] = {
    Suite.W_LAWS: suite_w_laws,
    Suite.W_HOMOLOGY: suite_w_homology,
    Suite.MOORE: suite_moore,
    Suite.ZETA: suite_zeta,
    Suite.JAMES: suite_james,
    Suite.GRPCOMP: suite_grpcomp,
    Suite.HOCOLIM: suite_hocolim,
    Suite.BAR_DELTA: suite_bar_delta,
}


def run_suite(suite: Suite, ctx: SuiteContext) -> List[CheckResult]:
    """Run one suite, or every suite in declaration order for ``all``"""
    if suite is Suite.ALL:
        return [r for s in SUITES for r in SUITES[s](ctx)]
    return SUITES[suite](ctx)
