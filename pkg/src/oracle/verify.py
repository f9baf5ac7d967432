"""The verify suite: every closed form and structural property against brute force.

A run produces one JSON line per check. The first line echoes the
configuration (including the seed) so a failing run can be replayed.
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.blocks.groth import (
    OFF_WALL,
    ONTO_WALL,
    Basis,
    GVector,
    convert_basis,
    locate,
    theta_s,
    translate,
    translate_standard,
)
from src.blocks.levi_block import (
    LeviDatum,
    N_I,
    WallSetup,
    box_weights,
    choose_mu,
    in_CI,
    in_WIp,
    make_levi,
    n_i_formula,
    orbit_rep,
    refl_stays_regular,
    regular_labels,
    wall_labels,
)
from src.blocks.sections import (
    SectionKind,
    delta_to_deltabar,
    deltabar_to_delta,
    off_wall_transform,
    onto_wall_transform,
    skeleton_from_char,
)
from src.common.errors import AlcalcError, UsageError
from src.common.output import dumps_canonical
from src.geometry.affine_weyl import Reflection, reduce_to_fundamental_alcove, simple_reflections_Sp
from src.geometry.alcoves import (
    BELOW,
    alcove_walls_lower,
    d_value,
    is_dominant,
    is_regular,
    single_reflection_compare,
    uparrow_leq,
    uparrow_less,
    walls_of_alcove,
)
from src.geometry.rootdata import DEFAULT_RANK_CAP, RootSystem, Weight, root_leq, root_system
from src.oracle.brute import (
    brute_in_WIp,
    brute_linked,
    brute_n_i,
    brute_orbit,
    brute_uparrow,
    sl2_tilting_table,
)
from src.tilting.characters import theta_product_char, tilt_summand_check
from src.tilting.table import TiltingTable, greedy_peel
from src.tilting.words import certify_word, domexp_word

logger = logging.getLogger(__name__)

# Failure entries kept per check; the count is always exact
MAX_REPORTED_FAILURES = 20

# Above this rank the windows are sampled instead of walked exhaustively
EXHAUSTIVE_RANK = 2

CHECK_ORDER = (
    "stab_size",
    "refl_i",
    "in_wip",
    "refl_ord",
    "prec_ml",
    "linkage",
    "trans_round_trip",
    "basis_commutation",
    "domexp",
    "tilt_summand",
    "theta_twice",
    "section_squares",
    "uparrow_oracle",
    "peel_sl2",
)


@dataclass(frozen=True)
class VerifyConfig:
    """What to verify. levis=None means every subset of the simple roots."""
    type_spec: str
    p: int
    levis: Optional[Tuple[Tuple[int, ...], ...]] = None
    box: int = 20
    max_d: int = 3
    seed: int = 0
    samples: int = 200
    rank_cap: int = DEFAULT_RANK_CAP

    def __post_init__(self):
        if self.box < self.p:
            raise UsageError(f"box radius {self.box} must be at least p={self.p}", box=self.box, p=self.p)
        if self.max_d < 0 or self.samples < 0:
            raise UsageError("max_d and samples must be non-negative")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.type_spec,
            "p": self.p,
            "levis": None if self.levis is None else [[i + 1 for i in I] for I in self.levis],
            "box": self.box,
            "max_d": self.max_d,
            "seed": self.seed,
            "samples": self.samples,
        }


@dataclass
class CheckResult:
    check: str
    instances: int = 0
    failure_count: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def tick(self, ok: bool, **detail: Any) -> None:
        self.instances += 1
        if not ok:
            self.fail(**detail)

    def fail(self, **detail: Any) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(detail)

    def guard(self, fn: Callable[[], bool], **context: Any) -> None:
        """Run one instance; an AlcalcError counts as a failure of this check."""
        try:
            ok = fn()
        except AlcalcError as e:
            self.instances += 1
            self.fail(error=e.to_dict(), **context)
            return
        self.tick(bool(ok), **context)

    def to_dict(self) -> Dict[str, Any]:
        payload = {"check": self.check, "instances": self.instances, "failures": self.failures}
        if self.failure_count > len(self.failures):
            payload["failure_count"] = self.failure_count
        return payload


@dataclass
class VerifyReport:
    config: VerifyConfig
    results: Dict[str, CheckResult] = field(default_factory=dict)
    config_failures: List[Dict[str, Any]] = field(default_factory=list)

    def result(self, name: str) -> CheckResult:
        if name not in self.results:
            self.results[name] = CheckResult(name)
        return self.results[name]

    @property
    def passed(self) -> bool:
        return not self.config_failures and all(r.passed for r in self.results.values())

    @property
    def instances(self) -> int:
        return sum(r.instances for r in self.results.values())

    def failed_checks(self) -> List[str]:
        names = [name for name, r in self.results.items() if not r.passed]
        return (["config"] if self.config_failures else []) + names

    def config_line(self) -> Dict[str, Any]:
        return dict(self.config.to_dict(), check="config", instances=0, failures=self.config_failures)

    def lines(self) -> List[Dict[str, Any]]:
        ordered = [self.results[name] for name in CHECK_ORDER if name in self.results]
        return [self.config_line()] + [r.to_dict() for r in ordered]

    def to_jsonl(self) -> str:
        return "\n".join(dumps_canonical(line) for line in self.lines())

    def summary(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "instances": self.instances,
            "failed_checks": self.failed_checks(),
            "seed": self.config.seed,
        }


# --- windows --------------------------------------------------------------------------------

def _all_levis(rank: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        I for size in range(rank + 1) for I in itertools.combinations(range(rank), size)
    )


def _thin(items: Sequence[Any], rs: RootSystem, rng: random.Random, cap: int) -> List[Any]:
    """Everything at small rank, a seeded sample of at most cap items otherwise."""
    items = list(items)
    if rs.rank <= EXHAUSTIVE_RANK or len(items) <= cap:
        return items
    return rng.sample(items, cap)


def _regular_window(rs: RootSystem, p: int, radius: int, max_d: int) -> List[Weight]:
    """Weights of W_p . 0 in the box with |d| <= max_d."""
    zero = rs.zero
    window = []
    for nu in box_weights(rs.rank, radius):
        if not is_regular(rs, nu, p) or abs(d_value(rs, nu, p)) > max_d:
            continue
        if reduce_to_fundamental_alcove(rs, nu, p)[1] == zero:
            window.append(nu)
    return window


# --- per-Levi checks ------------------------------------------------------------------------------

def stab_size_case(lam: Weight, L: LeviDatum, setups: Dict[Weight, WallSetup]) -> Optional[int]:
    """|W_I| off the walls; on the wall of s, |W_I|/2 exactly when wsw^-1 is in W_{I,p}."""
    rs, p = L.rs, L.p
    if is_regular(rs, lam, p):
        return L.order_WI
    w, base = reduce_to_fundamental_alcove(rs, lam, p)
    setup = setups.get(base)
    if setup is None:
        return None
    return L.order_WI // 2 if in_WIp(w.conjugate(setup.s.elt), L) else L.order_WI


def _check_stab_size(report: VerifyReport, L: LeviDatum, radius: int) -> None:
    result = report.result("stab_size")
    setups = {setup.mu: setup for setup in _wall_setups(L)}
    for lam in box_weights(L.rs.rank, radius):
        def run(lam=lam):
            brute = brute_n_i(lam, L)
            formula = n_i_formula(lam, L)
            if N_I(lam, L) != brute or (formula is not None and formula != brute):
                return False
            case = stab_size_case(lam, L, setups)
            return case is None or case == brute
        result.guard(run, levi=L.label, weight=list(lam))


def _check_refl_i(report: VerifyReport, L: LeviDatum, window: Sequence[Weight]) -> None:
    refl_i, in_wip = report.result("refl_i"), report.result("in_wip")
    zero = L.rs.zero
    for nu in window:
        for setup in _wall_setups(L):
            s = setup.s
            ctx = dict(levi=L.label, weight=list(nu), s=s.label)

            def membership(nu=nu, s=s):
                conj = locate(nu, zero, L).conjugate(s.elt)
                return in_WIp(conj, L) == brute_in_WIp(conj, L)
            in_wip.guard(membership, **ctx)

            if not in_CI(nu, L):
                continue

            def equivalence(nu=nu, s=s, setup=setup):
                w = locate(nu, zero, L)
                stays = refl_stays_regular(w, setup, L)
                return stays == (not brute_in_WIp(w.conjugate(s.elt), L))
            refl_i.guard(equivalence, **ctx)


def _check_prec_ml(report: VerifyReport, L: LeviDatum, window: Sequence[Weight]) -> None:
    """w.lam below ws.lam and w.mu below v.mu force w.lam below v.lam and vs.lam."""
    result = report.result("prec_ml")
    rs, p, zero = L.rs, L.p, L.rs.zero
    elements = [(nu, locate(nu, zero, L)) for nu in window]
    for s in simple_reflections_Sp(rs, p):
        mu = choose_mu(s, rs, p).mu
        for nu, w in elements:
            upper = w.compose(s.elt).dot(zero)
            if not uparrow_less(rs, nu, upper, p):
                continue
            w_mu = w.dot(mu)
            for other, v in elements:
                if not uparrow_leq(rs, w_mu, v.dot(mu), p):
                    continue

                def implication(v=v, other=other, nu=nu):
                    vs = v.compose(s.elt).dot(zero)
                    return uparrow_leq(rs, nu, other, p) and uparrow_leq(rs, nu, vs, p)
                result.guard(implication, levi=L.label, w=list(nu), v=list(other), s=s.label)


def _check_linkage(report: VerifyReport, L: LeviDatum, radius: int, rng: random.Random, cap: int) -> None:
    result = report.result("linkage")
    weights = _thin(list(box_weights(L.rs.rank, radius)), L.rs, rng, cap)
    reps = {lam: orbit_rep(lam, L) for lam in weights}
    for a, b in itertools.combinations(weights, 2):
        result.guard(
            lambda a=a, b=b: (reps[a] == reps[b]) == brute_linked(a, b, L),
            levi=L.label, pair=[list(a), list(b)],
        )
    for lam in weights:
        def closure(lam=lam):
            return all(reps.get(x, orbit_rep(x, L)) == reps[lam] for x in brute_orbit(lam, L, radius))
        result.guard(closure, levi=L.label, weight=list(lam))


def _wall_setups(L: LeviDatum) -> List[WallSetup]:
    return [choose_mu(s, L.rs, L.p) for s in simple_reflections_Sp(L.rs, L.p)]


def _check_translations(report: VerifyReport, L: LeviDatum, labels: Sequence[Weight],
                        wall_radius: int, rng: random.Random, cap: int) -> None:
    round_trip, commutation = report.result("trans_round_trip"), report.result("basis_commutation")
    for setup in _wall_setups(L):
        lam, mu = setup.lambda_star, setup.mu
        on_wall = _thin(wall_labels(setup, L, wall_radius), L.rs, rng, cap)
        for nu in on_wall:
            ctx = dict(levi=L.label, s=setup.s.label, label=list(nu))

            def there_and_back(nu=nu):
                e_nabla = GVector.basis_vector(Basis.NABLA, mu, nu)
                e_zbar = GVector.basis_vector(Basis.ZBAR, mu, nu)
                back_nabla = translate_standard(translate_standard(e_nabla, OFF_WALL, setup, L), ONTO_WALL, setup, L)
                back_zbar = translate(translate(e_zbar, OFF_WALL, setup, L), ONTO_WALL, setup, L)
                return back_nabla == e_nabla.scale(2) and back_zbar == e_zbar.scale(2)
            round_trip.guard(there_and_back, **ctx)
            commutation.guard(lambda nu=nu: _commutes(nu, mu, OFF_WALL, setup, L), **ctx)
        for nu in labels:
            commutation.guard(
                lambda nu=nu: _commutes(nu, lam, ONTO_WALL, setup, L),
                levi=L.label, s=setup.s.label, label=list(nu),
            )


def _commutes(nu: Weight, block: Weight, direction: str, setup: WallSetup, L: LeviDatum) -> bool:
    e = GVector.basis_vector(Basis.NABLA, block, nu)
    via_zbar = convert_basis(translate(convert_basis(e, Basis.ZBAR, L), direction, setup, L), Basis.NABLA, L)
    return via_zbar == translate_standard(e, direction, setup, L)


def _check_tilting(report: VerifyReport, L: LeviDatum, labels: Sequence[Weight]) -> List[Tuple[Weight, GVector]]:
    """DomExp certificates, TiltSummand triangularity and Theta_s^2 = 2 Theta_s."""
    domexp, summand, twice = report.result("domexp"), report.result("tilt_summand"), report.result("theta_twice")
    rs = L.rs
    characters = []
    setups = _wall_setups(L)
    for nu in labels:
        if not is_dominant(rs, nu):
            continue
        ctx = dict(levi=L.label, label=list(nu))
        try:
            word = domexp_word(nu, L)
        except AlcalcError as e:
            domexp.instances += 1
            domexp.fail(error=e.to_dict(), **ctx)
            continue
        domexp.guard(lambda word=word: certify_word(word.letters, L) == word and word.target == tuple(nu), **ctx)
        summand.guard(lambda word=word: tilt_summand_check(word, L).top_coeff == 1, **ctx)
        try:
            char = theta_product_char(word, L)
        except AlcalcError as e:
            twice.instances += 1
            twice.fail(error=e.to_dict(), **ctx)
            continue
        characters.append((tuple(nu), char))
        for setup in setups:
            twice.guard(
                lambda char=char, setup=setup: theta_s(theta_s(char, setup, L), setup, L) == theta_s(char, setup, L).scale(2),
                s=setup.s.label, **ctx,
            )
    return characters


def _random_char(block: Weight, labels: Sequence[Weight], rng: random.Random) -> GVector:
    picks = rng.sample(list(labels), min(len(labels), rng.randint(1, 3)))
    return GVector.build(Basis.NABLA, block, [(nu, rng.randint(1, 3)) for nu in picks])


def _check_section_squares(report: VerifyReport, L: LeviDatum, labels: Sequence[Weight],
                           wall_radius: int, rng: random.Random, samples: int) -> None:
    """Transforming a section skeleton agrees with reading one off the translated character."""
    result = report.result("section_squares")
    setups = _wall_setups(L)
    if not labels or not setups:
        return
    wall_sets = {setup.s: wall_labels(setup, L, wall_radius) for setup in setups}
    for i in range(samples):
        setup = setups[i % len(setups)]
        ctx = dict(levi=L.label, s=setup.s.label, sample=i)
        M = _random_char(setup.lambda_star, labels, rng)

        def onto(M=M, setup=setup):
            sk = skeleton_from_char(M, SectionKind.DELTABAR, L)
            moved = skeleton_from_char(translate_standard(M, ONTO_WALL, setup, L), SectionKind.DELTABAR, L)
            delta = deltabar_to_delta(sk, L)
            return (
                onto_wall_transform(sk, setup, L) == moved
                and delta == skeleton_from_char(M, SectionKind.DELTA, L)
                and delta_to_deltabar(delta, L) == sk
            )
        result.guard(onto, direction=ONTO_WALL, **ctx)

        on_wall = wall_sets[setup.s]
        if not on_wall:
            continue
        N = _random_char(setup.mu, on_wall, rng)

        def off(N=N, setup=setup):
            sk = skeleton_from_char(N, SectionKind.DELTABAR, L)
            moved = skeleton_from_char(translate_standard(N, OFF_WALL, setup, L), SectionKind.DELTABAR, L)
            return off_wall_transform(sk, setup, L) == moved
        result.guard(off, direction=OFF_WALL, **ctx)


def _check_peel_sl2(report: VerifyReport, L: LeviDatum, characters: Sequence[Tuple[Weight, GVector]], max_d: int) -> None:
    """A1 with I empty: every Theta-product peels into known tilting characters."""
    result = report.result("peel_sl2")
    raw = sl2_tilting_table(L.p, -max_d - 1, max_d + 1)
    table = TiltingTable.from_raw(L.rs.zero, raw)
    result.guard(lambda: table.validate(L) is None, table="sl2")
    for top, char in characters:

        def peel(char=char, top=top):
            multiplicities = greedy_peel(char, table, L)
            return multiplicities.get(top) == 1 and all(m > 0 for m in multiplicities.values())
        result.guard(peel, label=list(top))


# --- Levi-independent checks ----------------------------------------------------------------------

def _check_refl_ord(report: VerifyReport, rs: RootSystem, p: int, window: Sequence[Weight]) -> None:
    """Crossing a wall changes d by exactly one, downwards exactly when the order drops."""
    result = report.result("refl_ord")
    lower_walls = {nu: {(w.beta_index, w.n) for w in alcove_walls_lower(rs, nu, p)} for nu in window}
    for nu in window:
        for wall in walls_of_alcove(rs, nu, p):
            t = Reflection(wall.beta_index, wall.n, p, rs)

            def step(nu=nu, wall=wall, t=t):
                image = t.dot(nu)
                drop = d_value(rs, nu, p) - d_value(rs, image, p)
                below = single_reflection_compare(t, nu) == BELOW
                lower = (wall.beta_index, wall.n) in lower_walls[nu]
                if below:
                    return drop == 1 and lower and uparrow_less(rs, image, nu, p)
                return drop == -1 and not lower and uparrow_less(rs, nu, image, p)
            result.guard(step, weight=list(nu), wall=wall.to_dict())


def _check_uparrow_oracle(report: VerifyReport, rs: RootSystem, p: int, window: Sequence[Weight]) -> None:
    """Downward search against the networkx forward closure on root-comparable pairs."""
    result = report.result("uparrow_oracle")
    for a, b in itertools.permutations(window, 2):
        if not root_leq(rs, a, b):
            continue
        result.guard(
            lambda a=a, b=b: uparrow_leq(rs, a, b, p) == brute_uparrow(rs, a, b, p),
            pair=[list(a), list(b)],
        )


# --- driver -------------------------------------------------------------------------------------------

def verify_suite(cfg: VerifyConfig) -> VerifyReport:
    """Run every check for cfg; failures are report entries, never exceptions."""
    report = VerifyReport(cfg)
    rng = random.Random(cfg.seed)
    try:
        rs = root_system(cfg.type_spec, cfg.rank_cap)
        levis = cfg.levis if cfg.levis is not None else _all_levis(rs.rank)
        data = [make_levi(rs, tuple(I), cfg.p) for I in levis]
    except AlcalcError as e:
        logger.warning(f"verify: configuration rejected: {e}")
        report.config_failures.append(e.to_dict())
        return report

    p = cfg.p
    stab_radius = 3 * p
    linkage_radius = min(cfg.box, stab_radius)
    cap = max(cfg.samples, 1)
    window = _thin(_regular_window(rs, p, cfg.box, cfg.max_d), rs, rng, cap)
    logger.info(f"verify {rs.name} p={p}: {len(data)} Levi subsets, window of {len(window)} weights")

    _check_refl_ord(report, rs, p, window)
    oracle_window = [nu for nu in window if all(abs(x) <= 2 * p for x in nu)]
    _check_uparrow_oracle(report, rs, p, oracle_window)

    for L in data:
        logger.info(f"verify: Levi I={{{L.label}}}")
        labels = [nu for nu in regular_labels(L, cfg.box) if abs(d_value(rs, nu, p)) <= cfg.max_d]
        labels = _thin(labels, rs, rng, cap)
        _check_stab_size(report, L, stab_radius)
        _check_refl_i(report, L, window)
        _check_prec_ml(report, L, _thin(window, rs, rng, max(cap // 4, 1)))
        _check_linkage(report, L, linkage_radius, rng, cap)
        _check_translations(report, L, labels, cfg.box, rng, cap)
        characters = _check_tilting(report, L, labels)
        _check_section_squares(report, L, labels, cfg.box, rng, cfg.samples)
        if rs.name == "A1" and not L.I:
            _check_peel_sl2(report, L, characters, cfg.max_d)

    status = "passed" if report.passed else f"FAILED ({', '.join(report.failed_checks())})"
    logger.info(f"verify {rs.name} p={p}: {report.instances} instances, {status}")
    return report
