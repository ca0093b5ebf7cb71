"""Identity verifier: recipes, statuses, grids, determinism."""

import pytest

from gentile import (
    CONTESTED,
    GUARANTEED,
    IdentityId,
    VerificationTask,
    default_grid_tasks,
    expand_tasks,
    limit_theorem_agreement,
    run_grid,
    run_task,
)
from gentile.verifier import SINGLE_MODE_IDENTITIES, tolerance_for


def make_task(identity, **kwargs):
    params = dict(identity=identity, n=2, nu=2, m=2, subspace=1)
    params.update(kwargs)
    return VerificationTask(**params)


class TestTaskValidation:
    def test_sampled_needs_enough_vectors(self):
        with pytest.raises(ValueError):
            make_task(IdentityId.LADDER_NBRACKET, mode="sampled", k=8)

    def test_mode_and_interpretation_checked(self):
        with pytest.raises(ValueError):
            make_task(IdentityId.LADDER_NBRACKET, mode="exact")
        with pytest.raises(ValueError):
            make_task(IdentityId.CLASS_SUM_CASIMIR, interpretation="imaginary")


class TestGuaranteedIdentities:
    @pytest.mark.parametrize("identity", sorted(GUARANTEED, key=lambda i: i.value))
    @pytest.mark.parametrize("subspace", [None, 1])
    def test_pass_on_probe_points(self, identity, subspace):
        verdict = run_task(make_task(identity, subspace=subspace))
        assert verdict.status == "pass", verdict.detail
        assert verdict.residual < tolerance_for(identity)

    def test_tolerances_echoed(self):
        verdict = run_task(make_task(IdentityId.OCCUPATION_FUNCTIONS))
        assert verdict.tolerance == 1e-12
        verdict = run_task(make_task(IdentityId.SELF_BRACKET_PLAIN))
        assert verdict.tolerance == 1e-12
        verdict = run_task(make_task(IdentityId.CASIMIR_HERMITICITY))
        assert verdict.tolerance == 1e-10


class TestContestedIdentities:
    @pytest.mark.parametrize("identity", sorted(CONTESTED, key=lambda i: i.value))
    def test_always_report_only(self, identity):
        verdict = run_task(make_task(identity))
        assert verdict.status == "report_only"
        assert verdict.residual is not None

    def test_deformed_self_bracket_misses(self):
        # the deformed reading differs from the plain one by (1-q) g(N)
        verdict = run_task(make_task(IdentityId.SELF_BRACKET_DEFORMED))
        assert verdict.residual > 0.1

    def test_class_sum_relation_interpretations(self):
        entry = run_task(
            make_task(IdentityId.CLASS_SUM_CASIMIR, n=1, interpretation="entrywise_real")
        )
        herm = run_task(
            make_task(IdentityId.CLASS_SUM_CASIMIR, n=1, interpretation="hermitian_part")
        )
        assert entry.status == herm.status == "report_only"
        assert entry.residual is not None and herm.residual is not None

    def test_creator_phase_detail_reports_double_angle(self):
        verdict = run_task(make_task(IdentityId.CREATOR_PAIR_PHASE))
        assert "double-angle" in verdict.detail
        assert verdict.status == "pass"

    def test_spectrum_match_detail_names_variants(self):
        verdict = run_task(make_task(IdentityId.CASIMIR_SPECTRUM, n=1))
        assert verdict.status == "report_only"
        assert "raw" in verdict.detail and "shifted" in verdict.detail
        assert verdict.residual is not None


class TestSampledMode:
    @pytest.mark.parametrize(
        "identity",
        [
            IdentityId.CLASS_SUM_CASIMIR,
            IdentityId.GENERATOR_COMMUTATION,
            IdentityId.LIMIT_RELATION,
            IdentityId.SECTOR_CONSERVATION,
        ],
    )
    def test_sampled_bounded_by_dense(self, identity):
        dense = run_task(make_task(identity, n=1))
        sampled = run_task(make_task(identity, n=1, mode="sampled", k=64, seed=42))
        assert sampled.residual <= dense.residual + 1e-10

    def test_sampled_is_deterministic(self):
        first = run_task(make_task(IdentityId.CLASS_SUM_CASIMIR, mode="sampled"))
        second = run_task(make_task(IdentityId.CLASS_SUM_CASIMIR, mode="sampled"))
        assert first.residual == second.residual


class TestGrid:
    def test_default_grid_counts(self):
        tasks = default_grid_tasks()
        points = 3 * 2 * 1 * 2  # n x nu x m x subspace
        fanout = len(IdentityId) - 1 + 2  # class-sum relation runs twice
        assert len(tasks) == points * fanout

    def test_default_grid_statuses(self):
        verdicts = run_grid(default_grid_tasks())
        assert all(v.status in ("pass", "report_only") for v in verdicts)
        guaranteed = [v for v in verdicts if v.identity in GUARANTEED]
        assert guaranteed and all(v.status == "pass" for v in guaranteed)
        contested = [v for v in verdicts if v.identity in CONTESTED]
        assert contested and all(v.status == "report_only" for v in contested)

    def test_verdicts_sorted(self):
        verdicts = run_grid(default_grid_tasks())
        keys = [v.sort_key() for v in verdicts]
        assert keys == sorted(keys)

    def test_oversized_dense_task_becomes_failed_verdict(self):
        tasks = expand_tasks(
            ns=(3,), nus=(3,), ms=(2,), subspaces=(None,),
            identities=(IdentityId.CASIMIR_HERMITICITY,),
        )
        verdicts = run_grid(tasks, dense_cap=100)
        assert len(verdicts) == 1
        assert verdicts[0].status == "fail"
        assert verdicts[0].residual is None
        assert "dense" in verdicts[0].detail

    def test_single_mode_identities_note_grid_echo(self):
        verdict = run_task(make_task(IdentityId.QUARTIC_WORD_BRACKET))
        assert verdict.identity in SINGLE_MODE_IDENTITIES
        assert "echo" in verdict.detail


class TestInternalConsistency:
    @pytest.mark.parametrize("nu", [2, 3])
    @pytest.mark.parametrize("subspace", [None, 1])
    def test_limit_and_theorem_recipes_agree_at_order_one(self, nu, subspace):
        assert limit_theorem_agreement(nu, 2, subspace) < 1e-12
