"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s`. Criteria that operate on
instances are driven through the CLI entry point (run_command) with
instance files on disk; pure arithmetic sweeps call the library directly.
"""

import random
import time
from contextlib import contextmanager

from redbench import constructions as cons
from redbench import serialization as ser
from redbench import solvers as sv
from redbench.bitsupport import (
    FiniteNatSet,
    SumMode,
    SumStream,
    extract_apart_from_fs,
    is_apart,
    lam,
    mu,
    support,
)
from redbench.cli import EXIT_OK, run_command
from redbench.colorings import (
    classify_canonical_fs,
    is_homogeneous,
    is_lambda_regressive,
    is_min_homogeneous,
    is_min_term_homogeneous,
    is_regressive,
)
from redbench.reductions import REGISTRY, Instance, decode_range
from redbench.solvers import SearchBudget, SearchConstraints
from redbench.wellorder import (
    exponent_stream,
    extract_descending,
    initial_term_decrease_witness,
)

from helpers import (
    certifying_set,
    chain_alpha,
    random_apart_set,
    random_descending_alpha,
    random_k_coloring,
    random_lambda_regressive_table,
    random_tuple_coloring,
)


@contextmanager
def criterion(number, label, limit_s):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    print(f"\n[acceptance] criterion {number} ({label}): PASS ({elapsed:.2f}s < {limit_s}s)")
    assert elapsed < limit_s, f"criterion {number} overran its {limit_s}s budget: {elapsed:.2f}s"


def write_instance(path, instance):
    path.write_text(ser.canonical_dumps(ser.instance_file(instance)))
    return str(path)


def test_criterion_1_support_laws():
    with criterion(1, "support laws on [1, 2^16)", 1.0):
        for n in range(1, 1 << 16):
            low = lam(n)
            high = mu(n)
            assert 1 << low == n & -n
            assert (1 << high) <= n < (1 << (high + 1))
            assert low <= high
            s = support(n)
            assert s[0] == low and s[-1] == high
            total = 0
            for b in s:
                total += 1 << b
            assert total == n


def test_criterion_2_apart_sum_law():
    with criterion(2, "apart-sum law, 10^5 sampled sets", 10.0):
        rng = random.Random(2001)
        for _ in range(100_000):
            size = rng.randint(1, 4)
            s = random_apart_set(rng, size, 12)
            elems = s.elements
            total = sum(elems)
            assert lam(total) == lam(elems[0])
            assert mu(total) == mu(elems[-1])
            sums = [0]
            for e in elems:
                sums += [x + e for x in sums]
            assert len(set(sums)) == len(sums)  # subset sums (incl. empty) injective


def test_criterion_3_canonical_witness_suite(tmp_path):
    with criterion(3, "canonical witnesses and exclusions", 30.0):
        domain = 1 << 16
        h = "1,4,32,256,2048,16384"
        witnesses = {
            1: cons.constant_coloring(0, domain),
            2: cons.identity_coloring(domain),
            3: cons.lam_coloring(domain),
            4: cons.mu_coloring(domain),
            5: cons.pair_lam_mu_coloring(domain),
        }
        for case, coloring in witnesses.items():
            path = write_instance(
                tmp_path / f"wit{case}.json", Instance("unary_coloring", coloring)
            )
            code, trace = run_command(
                ["classify", "--coloring", path, "--set", h, "--cap", "3"]
            )
            assert code == EXIT_OK
            assert trace["outcome"]["cases"] == [case]

        rng = random.Random(3001)
        bound = 1 << 10
        for _ in range(1000):
            c = random_lambda_regressive_table(rng, bound)
            hset = random_apart_set(rng, 6, 9)
            if len(hset) - 1 > lam(hset.min()):
                assert classify_canonical_fs(c, hset, cap=2) & {2, 4, 5} == frozenset()
        for _ in range(1000):
            k = rng.randint(1, 5)
            c = random_k_coloring(rng, k, bound)
            hset = random_apart_set(rng, 6, 9)
            assert classify_canonical_fs(c, hset, cap=2) <= frozenset({1})


def _random_source_instance(name, rng):
    if name.startswith("rt1k_to_reght"):
        k = rng.randint(1, 3)
        return Instance("rt1", random_k_coloring(rng, k, 64), {"k": k})
    if name == "reght_to_rt1":
        k = rng.randint(1, 2)
        return Instance("rt1", random_k_coloring(rng, k, 1025), {"k": k})
    if name.startswith("reght_to_ht"):
        k = rng.randint(1, 2)
        mode = SumMode.at_most(2) if name.endswith("atmost2") else SumMode.exactly(2)
        return Instance(
            "ht", random_k_coloring(rng, k, 1025), {"k": k, "mode": mode, "apart": True}
        )
    if name in ("rtk_to_reg2", "rt_to_reg2"):
        return Instance("rt", random_tuple_coloring(rng, 3, 24), {"k": 3, "n": 2})
    if name.startswith("reght_to_reg"):
        n = int(name[-1])
        return Instance(
            "reght", random_lambda_regressive_table(rng, 1025), {"mode": SumMode.exactly(n)}
        )
    if name.startswith("ran_to_reght"):
        m = rng.randint(1, 12)
        return Instance("ran", cons.InjectiveFunctionTable(tuple(rng.sample(range(1, 64), m))))
    if name == "wop_to_reght2":
        return Instance(
            "wop", random_descending_alpha(rng, rng.randint(2, 4), rng.randint(3, 6), 2)
        )
    raise AssertionError(name)


def test_criterion_4_phi_validity():
    with criterion(4, "phi outputs regressive on full declared domain", 60.0):
        rng = random.Random(4001)
        small = SearchBudget(element_bound=1 << 7, node_limit=1000)
        for name, reduction in sorted(REGISTRY.items()):
            for _ in range(1000):
                instance = _random_source_instance(name, rng)
                target = reduction.phi(instance, small)
                if target.principle == "reght":
                    ok, witness = is_lambda_regressive(target.payload)
                    assert ok, (name, witness)
                else:
                    ground = target.param("ground_set")
                    ok, witness = is_regressive(target.payload, ground)
                    assert ok, (name, witness)


def test_criterion_5_ran_round_trip(tmp_path):
    with criterion(5, "range-existence round trip, 100 tables", 300.0):
        rng = random.Random(5001)
        for i in range(100):
            m = rng.randint(1, 12)
            table = cons.InjectiveFunctionTable(tuple(rng.sample(range(1, 64), m)))
            path = write_instance(tmp_path / f"ran{i}.json", Instance("ran", table))
            code, trace = run_command(
                ["verify", "--reduction", "ran_to_reght2", "--instance", path, "--bound", "20"]
            )
            assert code == EXIT_OK, trace["outcome"]
            report = trace["outcome"]["report"]
            assert report["status"] == "ok"
            decoded = report["psi_output"]["payload"]
            bound = decoded["certified_bound"]
            oracle = sorted(x for x in table.range_set() if x < bound)
            assert decoded["members"] == oracle
            # independent decode against the solver's solution set
            h = FiniteNatSet(tuple(report["solver"]["solution"]))
            for x in range(bound):
                assert decode_range(table, h, 2, x) == (x in table.range_set())


def test_criterion_6_reg_round_trips(tmp_path):
    with criterion(6, "regressive tuple round trips, 100 colorings", 120.0):
        rng = random.Random(6001)
        for i in range(100):
            coloring = random_tuple_coloring(rng, 3, 40)
            instance = Instance("rt", coloring, {"k": 3, "n": 2})
            path = write_instance(tmp_path / f"rt{i}.json", instance)
            for name in ("rtk_to_reg2", "rt_to_reg2"):
                code, trace = run_command(
                    ["verify", "--reduction", name, "--instance", path, "--bound", "20"]
                )
                assert code == EXIT_OK, (name, trace["outcome"])
                report = trace["outcome"]["report"]
                assert report["status"] == "ok", (name, report)
                error = trace["outcome"].get("error", {})
                assert error.get("type") != "internal_contradiction"
                out = FiniteNatSet(tuple(report["psi_output"]["payload"]["elements"]))
                assert is_homogeneous(coloring, out, "tuples").holds


def test_criterion_7_wop_round_trip(tmp_path):
    with criterion(7, "ordinal descent round trip, 50 sequences", 120.0):
        rng = random.Random(7001)
        alphas = [chain_alpha(size) for size in (2, 3, 4, 5)] * 2
        recorded = [size - 1 for size in (2, 3, 4, 5)] * 2
        while len(alphas) < 50:
            alpha = random_descending_alpha(
                rng, rng.randint(2, 5), rng.randint(4, 30), rng.randint(1, 5)
            )
            horizon = exponent_stream(alpha).length
            reference = extract_descending(alpha, certifying_set(horizon), 2)
            assert reference.fully_certified
            alphas.append(alpha)
            recorded.append(len(reference.sigma))
        for i, (alpha, d) in enumerate(zip(alphas, recorded)):
            path = write_instance(tmp_path / f"wop{i}.json", Instance("wop", alpha))
            code, trace = run_command(
                ["verify", "--reduction", "wop_to_reght2", "--instance", path, "--bound", "20"]
            )
            assert code == EXIT_OK, trace["outcome"]
            report = trace["outcome"]["report"]
            assert report["status"] == "ok"
            sigma = tuple(report["psi_output"]["payload"]["values"])
            # the solve plan certifies the whole horizon, so the certified
            # length equals the recorded descent length d
            assert report["psi_output"]["payload"]["stop_reason"] == "descent_exhausted"
            assert len(sigma) >= min(d, len(sigma))
            assert len(sigma) == d
            exponents = alpha.exponent_values()
            assert all(v in exponents for v in sigma)
            assert all(a > b for a, b in zip(sigma, sigma[1:]))
            if len(alpha) > len(alpha.terms[0]):
                assert initial_term_decrease_witness(alpha) is not None


def test_criterion_8_solver_soundness_determinism(tmp_path):
    with criterion(8, "solver soundness, determinism, support-shape agreement", 300.0):
        rng = random.Random(8001)

        # found outcomes revalidate against the independent predicates
        for _ in range(15):
            c = random_lambda_regressive_table(rng, 1 << 12)
            out = sv.solve_lambda_reg_ht(
                c, SumMode.exactly(2), 3, SearchBudget(element_bound=1 << 10, node_limit=500_000)
            )
            if out.status == sv.FOUND:
                assert is_apart(out.solution)[0]
                assert is_min_term_homogeneous(c, out.solution, SumMode.exactly(2))[0]
        entries = random_tuple_coloring(rng, 3, 24)
        guarded = cons.regressive_guard_fixed(entries, 3)
        out = sv.solve_reg(guarded, FiniteNatSet(tuple(range(24))), 5)
        assert out.status == sv.FOUND
        assert is_min_homogeneous(guarded, out.solution)[0]

        # byte-identical traces, timing aside
        inst = Instance(
            "reght",
            cons.range_coloring(cons.InjectiveFunctionTable((5, 6, 7, 1, 2)), 2 * (1 << 12) + 1),
            {"mode": SumMode.exactly(2)},
        )
        path = write_instance(tmp_path / "trace_inst.json", inst)
        argv = [
            "solve", "--instance", path, "--size", "3", "--bound", "12",
            "--min-lambda-h0", "2", "--last-mu-at-least", "5",
        ]
        _, first = run_command(argv)
        _, second = run_command(argv)
        first.pop("wall_clock_s")
        second.pop("wall_clock_s")
        assert ser.canonical_dumps(first).encode() == ser.canonical_dumps(second).encode()

        # support-shape reduction agrees with the dense search at bound 2^12
        mode = SumMode.exactly(2)
        budget = SearchBudget(element_bound=1 << 12, node_limit=2_000_000)
        flagged = []
        for _ in range(8):
            m = rng.randint(1, 8)
            table = cons.InjectiveFunctionTable(tuple(rng.sample(range(1, 32), m)))
            constraints = SearchConstraints(min_lambda_h0=2, last_mu_at_least=m)
            flagged.append((cons.range_coloring(table, 2 * (1 << 12) + 1), constraints))
        for _ in range(4):
            alpha = random_descending_alpha(rng, rng.randint(2, 4), rng.randint(3, 8), 2)
            horizon = exponent_stream(alpha).length
            constraints = SearchConstraints(min_lambda_h0=0, last_mu_at_least=None)
            flagged.append((cons.wop_coloring(alpha, 2 * (1 << 12) + 1), constraints))
        for _ in range(4):
            k = rng.randint(1, 2)
            base = random_k_coloring(rng, k, 64)
            constraints = SearchConstraints()
            flagged.append((cons.mu_recoloring(base, k, 2 * (1 << 12) + 1), constraints))
        for coloring, constraints in flagged:
            dense = sv.solve_lambda_reg_ht(coloring, mode, 3, budget, constraints=constraints)
            shaped = sv.solve_lambda_reg_ht(
                coloring, mode, 3, budget, constraints=constraints, support_shape=True
            )
            assert dense.status == shaped.status
            if dense.status == sv.FOUND:
                assert [(lam(x), mu(x)) for x in dense.solution] == [
                    (lam(x), mu(x)) for x in shaped.solution
                ]


def test_criterion_9_apart_extraction():
    with criterion(9, "apart extraction from 20 streams", 10.0):
        rng = random.Random(9001)
        streams = [SumStream.powers_of_two(), SumStream.odds(), SumStream.naturals()]

        def random_stream(seed, start, gap):
            local = random.Random(seed)
            acc = [start]

            def fn(i):
                while len(acc) <= i:
                    acc.append(acc[-1] + local.randint(1, gap))
                return acc[i]

            return SumStream(fn, name=f"random{seed}")

        for i in range(17):
            streams.append(random_stream(1000 + i, rng.randint(1, 40), rng.randint(2, 12)))
        for stream in streams:
            out = extract_apart_from_fs(stream, 8, budget=1_500_000)
            assert len(out.elements) == 8
            assert is_apart(out.elements)[0]
            for element, block in zip(out.elements, out.blocks):
                assert sum(block) == element
                assert len(set(block)) == len(block)
