"""Verification harness: classification, engine agreement, invariants.

Used by the command line ``verify`` subcommand and reused wholesale by
the test-suite.  Each check returns a named pass/fail row so callers
can render a table; nothing here mutates the instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basic import enumerate_basic
from .canonical import Strategy, compare, parent_mask, solution_attrs
from .oracle import brute_force_maximal
from .refined import enumerate_refined
from .report import EnumerationReport
from .setsystem import SetSystem, classify_system, mask_of, elements_of
from .stateless import stateless_traverse

PEAK_AUX_FACTOR = 10  # stateless peak auxiliary elements must stay <= factor * q


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def run_collecting(engine: str, inst: SetSystem,
                   **kwargs) -> tuple[list[tuple[int, ...]], EnumerationReport]:
    """Run one engine, returning emissions in order plus its report."""
    out: list[tuple[int, ...]] = []

    def sink(sol, depth):
        out.append(sol)

    if engine == "basic":
        rep = enumerate_basic(inst, kwargs.pop("strategy", Strategy.MIN_ELEMENT), sink=sink)
    elif engine == "refined":
        rep = enumerate_refined(inst, sink=sink, **kwargs)
    elif engine == "stateless":
        rep = stateless_traverse(inst, sink=sink, **kwargs)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return out, rep


# -- invariant suites --------------------------------------------------------

def prefix_closure_violations(inst: SetSystem, solutions, strategy: Strategy) -> list[str]:
    """Canonical prefixes of maximal solutions must all be members."""
    bad = []
    for sol in solutions:
        attrs = solution_attrs(inst, mask_of(sol), strategy)
        prefix = 0
        for e in attrs.order:
            prefix |= 1 << (e - 1)
            if not inst.is_member(prefix):
                bad.append(f"prefix {elements_of(prefix)} of {sol} not in F")
    return bad


def order_monotonicity_violations(inst: SetSystem, solutions,
                                  strategy: Strategy) -> list[str]:
    """Completing any canonical prefix must never exceed the solution.

    This is the ordering constraint that makes every parent precede its
    child, hence the traversal forest acyclic.
    """
    from .canonical import _complete_mask
    bad = []
    for sol in solutions:
        s_mask = mask_of(sol)
        attrs = solution_attrs(inst, s_mask, strategy)
        prefix = 0
        for e in attrs.order:
            prefix |= 1 << (e - 1)
            done, _, _ = _complete_mask(inst, prefix, inst.full_mask, strategy)
            if compare(inst, solution_attrs(inst, done, strategy), attrs) > 0:
                bad.append(f"complete of prefix ending at {e} exceeds {sol}")
    return bad


def fact_violations(inst: SetSystem, solutions, strategy: Strategy) -> list[str]:
    """Nonempty members meet the good singletons; strict subsets extend."""
    bad = []
    z = inst.good_mask
    for sol in solutions:
        s_mask = mask_of(sol)
        if not (s_mask & z):
            bad.append(f"{sol} contains no good singleton")
        attrs = solution_attrs(inst, s_mask, strategy)
        prefix = 0
        for e in attrs.order[:-1]:
            prefix |= 1 << (e - 1)
            if not (prefix & z):
                bad.append(f"prefix of {sol} misses the good singletons")
            if inst.extension_mask(prefix, s_mask) == 0:
                bad.append(f"strict subset of {sol} has empty extension inside it")
    return bad


def layered_choice_stability_violations(inst: SetSystem, rng,
                                        trials: int = 60) -> list[str]:
    """On commutable systems the layered pick survives set growth.

    Sampled form: draw members X and X+Y with a shared start, a random
    candidate pool A; whenever the element chosen for X is still addable
    to X+Y, it must be chosen for X+Y as well.  This stability is what
    the truncated completion in the refined engine leans on.
    """
    from .canonical import _choose_mask

    def random_member(lo: int = 0) -> int:
        m = lo
        while True:
            opts = [e for e in range(1, inst.n + 1)
                    if not (m >> (e - 1)) & 1 and inst.extend_ok(m, e)]
            if not opts or (m and rng.random() < 0.35):
                return m
            m |= 1 << (rng.choice(opts) - 1)

    bad: list[str] = []
    applied = 0
    for _ in range(trials):
        x = random_member()
        if not x:
            continue
        xy = random_member(lo=x)
        if xy == x:
            continue
        start = inst.source_of(x)
        a = xy & ~x  # the grown part must lie inside the candidate pool
        for e in range(1, inst.n + 1):
            if rng.random() < 0.6:
                a |= 1 << (e - 1)
        b = _choose_mask(inst, x, a, Strategy.LAYERED_MIN, start)
        if b is None:
            continue
        bb = 1 << (b - 1)
        if (xy & bb) or not (a & bb) or not inst.extend_ok(xy, b):
            continue
        applied += 1
        again = _choose_mask(inst, xy, a, Strategy.LAYERED_MIN, start)
        if again != b:
            bad.append(f"choice {b} for {elements_of(x)} became {again} "
                       f"after growing to {elements_of(xy)}")
    if applied == 0:
        return []
    return bad


def parent_chain_violations(inst: SetSystem, solutions,
                            strategy: Strategy) -> list[str]:
    """Parent links decrease strictly and reach a root within #solutions."""
    bad = []
    limit = len(solutions) + 1
    for sol in solutions:
        cur = solution_attrs(inst, mask_of(sol), strategy)
        steps = 0
        while not cur.is_root:
            pm = parent_mask(inst, cur)
            nxt = solution_attrs(inst, pm, strategy)
            if compare(inst, nxt, cur) >= 0:
                bad.append(f"parent of {cur.elements} does not precede it")
                break
            cur = nxt
            steps += 1
            if steps > limit:
                bad.append(f"parent chain of {sol} did not reach a root")
                break
    return bad


# -- the whole table ---------------------------------------------------------

def verify_instance(inst: SetSystem, oracle_guard: int = 16,
                    cache_limit: int = 13,
                    classify_guard: int = 16) -> list[CheckResult]:
    """Full verification of one instance; n must fit the oracle guard."""
    checks: list[CheckResult] = []
    sys = inst.cached(cache_limit)

    if sys.n <= classify_guard:
        cls = classify_system(sys, guard=classify_guard)
        checks.append(CheckResult(
            "strongly-accessible", cls.strongly_accessible,
            cls.counterexamples.get("strongly_accessible", "")))
        if inst.commutable:
            checks.append(CheckResult(
                "declared-commutable-confirmed", cls.commutable,
                cls.counterexamples.get("commutable", "")))
    expected = brute_force_maximal(sys, guard=oracle_guard)

    outputs: dict[str, list[tuple[int, ...]]] = {}
    engines = ["basic"] + (["refined", "stateless"] if inst.commutable else [])
    for engine in engines:
        try:
            out, rep = run_collecting(engine, sys)
        except Exception as exc:  # noqa: BLE001 - reported as a failed check
            checks.append(CheckResult(f"{engine}-runs", False, repr(exc)))
            continue
        outputs[engine] = out
        checks.append(CheckResult(
            f"{engine}-matches-oracle", set(out) == expected,
            f"{len(out)} emitted vs {len(expected)} expected"))
        checks.append(CheckResult(
            f"{engine}-duplicate-free", len(out) == len(set(out)),
            f"{len(out) - len(set(out))} duplicates"))
        if engine == "stateless":
            q = max(rep.max_solution_size, 1)
            ok = rep.peak_aux_elements is not None and \
                rep.peak_aux_elements <= PEAK_AUX_FACTOR * q
            checks.append(CheckResult(
                "stateless-aux-memory", ok,
                f"peak {rep.peak_aux_elements} vs limit {PEAK_AUX_FACTOR * q}"))

    if len(outputs) > 1:
        sets = {k: sorted(v) for k, v in outputs.items()}
        first = next(iter(sets.values()))
        checks.append(CheckResult(
            "engines-agree", all(v == first for v in sets.values()),
            "sorted outputs differ" if any(v != first for v in sets.values()) else ""))

    sols = sorted(expected)
    strategies = [Strategy.MIN_ELEMENT]
    if inst.commutable:
        strategies.append(Strategy.LAYERED_MIN)
    for strat in strategies:
        tag = strat.value
        checks.append(_as_check(f"prefix-closure[{tag}]",
                                prefix_closure_violations(sys, sols, strat)))
        checks.append(_as_check(f"order-monotonicity[{tag}]",
                                order_monotonicity_violations(sys, sols, strat)))
        checks.append(_as_check(f"facts[{tag}]",
                                fact_violations(sys, sols, strat)))
        checks.append(_as_check(f"parent-chain[{tag}]",
                                parent_chain_violations(sys, sols, strat)))
    return checks


def _as_check(name: str, violations: list[str]) -> CheckResult:
    return CheckResult(name, not violations, violations[0] if violations else "")
