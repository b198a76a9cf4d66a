"""Evaluation metric tests against hand-computed confusion matrices."""

import numpy as np
import pytest

from qdetect.errors import DimensionMismatchError, UnseenLabelError
from qdetect.dataio import LabeledDataset
from qdetect.metrics import (
    default_label,
    evaluate,
    predict_dataset,
    report_from_confusion,
)
from qdetect.multiclass import train_pgm, train_one_vs_rest
from qdetect.states import FeatureVector


def fv(dim, entries):
    return FeatureVector(dim=dim, entries=entries)


def orthogonal_corpus(n_per_class=3, dim=3):
    docs = []
    for k in range(dim):
        docs.extend((f"c{k}", fv(dim, {k: float(j + 1)})) for j in range(n_per_class))
    return docs


class TestReportFromConfusion:
    def test_two_class_reference_values(self):
        report = report_from_confusion(("a", "b"), [[2, 1], [0, 3]])
        assert report.precision[0] == pytest.approx(1.0)
        assert report.recall[0] == pytest.approx(2.0 / 3.0)
        assert report.f1[0] == pytest.approx(0.8)
        assert report.precision[1] == pytest.approx(0.75)
        assert report.recall[1] == pytest.approx(1.0)
        assert report.f1[1] == pytest.approx(6.0 / 7.0)
        assert report.accuracy == pytest.approx(5.0 / 6.0)
        assert report.empirical_cost == pytest.approx(1.0 / 6.0)

    def test_perfect_predictions(self):
        report = report_from_confusion(("a", "b"), [[4, 0], [0, 6]])
        assert report.accuracy == 1.0
        assert report.empirical_cost == 0.0
        assert report.macro_f1 == 1.0
        assert report.micro_f1 == 1.0

    def test_all_wrong_two_class(self):
        report = report_from_confusion(("a", "b"), [[0, 2], [3, 0]])
        assert report.accuracy == 0.0
        assert report.empirical_cost == 1.0

    def test_micro_f1_equals_accuracy_on_random_confusions(self):
        rng = np.random.default_rng(14)
        for _ in range(25):
            n = int(rng.integers(2, 6))
            confusion = rng.integers(0, 9, size=(n, n))
            confusion[0, 0] += 1  # never all-zero
            report = report_from_confusion([f"c{k}" for k in range(n)], confusion)
            assert report.micro_f1 == pytest.approx(report.accuracy, abs=1e-12)
            assert report.empirical_cost == pytest.approx(1.0 - report.accuracy, abs=1e-12)

    def test_zero_denominator_flags(self):
        # class b never predicted, class c absent from the truth
        report = report_from_confusion(("a", "b", "c"), [[2, 0, 1], [1, 0, 0], [0, 0, 0]])
        assert report.precision[1] == 0.0
        assert "precision_undefined" in report.flags[1]
        assert report.recall[2] == 0.0
        assert "recall_undefined" in report.flags[2]
        # macro averages run over classes present in the truth only
        assert report.macro_recall == pytest.approx((2.0 / 3.0 + 0.0) / 2.0)

    def test_custom_cost_matrix(self):
        cost = np.array([[0.0, 5.0], [1.0, 0.0]])
        report = report_from_confusion(("a", "b"), [[2, 1], [1, 2]], cost=cost)
        # one a->b mistake costs K[b][a]=1, one b->a mistake costs K[a][b]=5
        assert report.empirical_cost == pytest.approx((1.0 + 5.0) / 6.0)


class TestEvaluate:
    def test_perfect_model_on_orthogonal_corpus(self):
        corpus = orthogonal_corpus()
        ds = LabeledDataset(dim=3, documents=tuple(corpus))
        for model in (train_pgm(corpus, 3), train_one_vs_rest(corpus, 3)):
            report = evaluate(model, ds)
            assert report.accuracy == 1.0
            assert report.empirical_cost == 0.0
            assert report.degenerate_count == 0

    def test_unseen_label_rejected(self):
        corpus = orthogonal_corpus()
        model = train_pgm(corpus, 3)
        bad = LabeledDataset(dim=3, documents=(("mystery", fv(3, {0: 1})),))
        with pytest.raises(UnseenLabelError, match="mystery"):
            evaluate(model, bad)

    def test_degenerate_document_takes_largest_prior(self):
        corpus = [("a", fv(2, {0: 1}))] * 3 + [("b", fv(2, {1: 1}))] * 2
        model = train_pgm(corpus, 2)
        assert default_label(model) == "a"
        ds = LabeledDataset(dim=2, documents=(("b", fv(2, {})),))
        report = evaluate(model, ds)
        assert report.degenerate_count == 1
        assert report.confusion[1, 0] == 1  # true b, predicted a

    def test_smaller_test_dim_zero_padded(self):
        corpus = orthogonal_corpus(dim=3)
        model = train_pgm(corpus, 3)
        narrow = LabeledDataset(dim=2, documents=(("c0", fv(2, {0: 2})), ("c1", fv(2, {1: 1}))))
        report = evaluate(model, narrow)
        assert report.accuracy == 1.0

    def test_larger_test_dim_rejected(self):
        corpus = orthogonal_corpus(dim=2)
        model = train_pgm(corpus, 2)
        wide = LabeledDataset(dim=4, documents=(("c0", fv(4, {0: 1})),))
        with pytest.raises(DimensionMismatchError):
            evaluate(model, wide)


class TestPredictDataset:
    def test_rows_align_with_documents(self):
        corpus = orthogonal_corpus()
        model = train_pgm(corpus, 3)
        ds = LabeledDataset(dim=3, documents=tuple(corpus))
        rows = predict_dataset(model, ds)
        assert len(rows) == len(ds)
        for (label, _), (pred, value, flagged) in zip(ds.documents, rows):
            assert pred == label
            assert 0.0 <= value <= 1.0 + 1e-10
            assert not flagged
