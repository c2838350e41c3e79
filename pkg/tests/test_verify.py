import numpy as np
import pytest

from tenclass import (
    GeneratorSpec,
    apply,
    canonical_dumps,
    generate,
    is_diag_dominant,
    is_m_tensor,
    load_fixtures,
    run_fixtures,
    run_suite,
)
from tenclass.classifiers import Config, TensorClassifier
from tenclass.verify import SUITES, _gen_almost_e0, thread_count


class TestGenerators:
    def test_diag_dominant_soundness(self):
        spec = GeneratorSpec("diagDominant", 3, 3, count=8, seed=5)
        for A in generate(spec):
            assert is_diag_dominant(A).holds
            assert np.all(A.data[(np.arange(3),) * 3] >= 0)

    def test_strict_diag_dominant_soundness(self):
        spec = GeneratorSpec("strictDiagDominant", 4, 2, count=8, seed=5)
        for A in generate(spec):
            assert is_diag_dominant(A, strict=True).holds

    def test_z_factor_controls_strong_m(self):
        strong = generate(GeneratorSpec("zTensor", 3, 3, count=4, seed=2, factor=1.5))
        for A in strong:
            assert is_m_tensor(A, strong=True).holds
        weak = generate(GeneratorSpec("zTensor", 3, 3, count=4, seed=2, factor=0.5))
        for A in weak:
            assert is_m_tensor(A).status == "Fails"

    def test_nonneg_kind(self):
        for A in generate(GeneratorSpec("nonneg", 3, 4, count=4, seed=9)):
            assert np.all(A.data >= 0)

    def test_symmetric_kind(self):
        from tenclass import is_symmetric

        for A in generate(GeneratorSpec("symmetric", 4, 3, count=4, seed=9)):
            assert is_symmetric(A)

    def test_seeded_almost_kind(self):
        cfg = Config()
        for A in generate(GeneratorSpec("almostE0Seeded", 3, 2, count=4, seed=3), cfg):
            assert TensorClassifier(A, cfg).is_almost_semi_positive(False).holds

    def test_seeded_generator_returns_valid_witness(self):
        cfg = Config()
        for (m, n) in [(3, 2), (3, 4), (4, 3), (4, 4)]:
            rng = np.random.default_rng([3, m, n])
            A, x = _gen_almost_e0(rng, m, n, cfg)
            assert np.all(x > 0)
            assert np.all(apply(A, x) < 0)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown generator kind"):
            GeneratorSpec("mystery", 3, 2)

    def test_determinism(self):
        spec = GeneratorSpec("symmetric", 3, 3, count=3, seed=11)
        a = generate(spec)
        b = generate(spec)
        assert all(x == y for x, y in zip(a, b))


class TestSuites:
    def test_registry_contents(self):
        required = {
            "dd_implies_E0", "sdd_implies_E", "nonneg_implies_E0", "z_E0_iff_M",
            "copositive_implies_semipositive", "sym_semipositive_implies_copositive",
            "sym_almostE0_iff_almostC0", "almost_invariance", "almost_row_negative",
            "almost_entry_conditions", "stabilizer",
        }
        assert required <= set(SUITES)

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            run_suite("no_such_suite")

    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_small_batches_clean(self, name):
        report = run_suite(name, seed=13, count=12)
        assert report["violations"] == []
        assert report["inconclusive"] == 0

    def test_byte_identical_reports(self):
        r1 = canonical_dumps(run_suite("dd_implies_E0", seed=7, count=10, threads=1))
        r2 = canonical_dumps(run_suite("dd_implies_E0", seed=7, count=10, threads=4))
        assert r1 == r2

    def test_thread_count_env(self, monkeypatch):
        monkeypatch.setenv("TENCLASS_THREADS", "6")
        assert thread_count() == 6
        monkeypatch.setenv("TENCLASS_THREADS", "junk")
        assert thread_count() == 1


class TestFixtureCorpus:
    def test_loads(self):
        fixtures = load_fixtures()
        names = {f.name for f in fixtures}
        assert {"almost_e0_construction", "hadamard_product",
                "symmetric_almost_e0", "almost_e0_dim3_not_almost_c0"} <= names

    def test_all_pass(self):
        report = run_fixtures()
        assert report["passed"]
        assert not report["inconclusive"]

    def test_expected_labels_use_known_classes(self):
        from tenclass.verify import _PREDICATES

        extra = {"E0", "E", "C0", "C"}
        for fixture in load_fixtures():
            for name in fixture.expected:
                assert name in _PREDICATES or name in extra
