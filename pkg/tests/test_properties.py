import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import make_partition
from regaudit.curves import DiCurve, ProportionGrid, ProportionPrior, auc_di, di_curve, pf_di
from regaudit.dataset import GroupPartition, ScoreDataset, partition
from regaudit.ks import ks_statistic
from regaudit.metrics import bin_di_at, med_di

scores = st.integers(0, 30).map(float)
group = st.lists(scores, min_size=1, max_size=25)
groups = st.dictionaries(st.sampled_from("abcd"), group, min_size=2, max_size=4)
weights = st.lists(st.floats(0, 10, allow_nan=False), min_size=100, max_size=100).filter(lambda w: sum(w) > 0)


@given(groups)
def test_curve_bounds_and_max_one(g):
    c = di_curve(make_partition(**g))
    table = np.vstack(list(c.values.values()))
    assert np.all((table >= 0) & (table <= 1))
    assert np.all(table.max(axis=0) == 1.0)
    assert np.all(table[:, 0] == 1.0)


@given(groups, st.sampled_from(["cube", "exp", "affine"]))
def test_monotone_transform_invariance(g, kind):
    f = {"cube": lambda x: x ** 3 + 7, "exp": np.exp, "affine": lambda x: 2.5 * x - 40}[kind]
    before = di_curve(make_partition(**g))
    after = di_curve(make_partition(**{k: f(np.asarray(v)) for k, v in g.items()}))
    for k in before.values:
        assert np.array_equal(before.values[k], after.values[k])


@given(groups, st.randoms())
def test_permutation_and_relabel_equivariance(g, rnd):
    part = make_partition(**g)
    shuffled = {}
    names = list(g)
    new_names = list(names)
    rnd.shuffle(new_names)
    rename = dict(zip(names, [n.upper() for n in new_names]))
    for k, v in g.items():
        v = list(v)
        rnd.shuffle(v)
        shuffled[rename[k]] = v
    other = make_partition(**shuffled)
    a, b = di_curve(part), di_curve(other)
    for k in g:
        assert np.array_equal(a.values[(k,)], b.values[(rename[k],)])
    assert med_di(part)[names[0]] == med_di(other)[rename[names[0]]]


@given(st.lists(st.tuples(scores, st.sampled_from("xyz")), min_size=1, max_size=60), st.randoms())
def test_partition_order_insensitive(rows, rnd):
    s, g = zip(*rows)
    ds1 = ScoreDataset.from_arrays(list(s), g=list(g))
    rows = list(rows)
    rnd.shuffle(rows)
    s2, g2 = zip(*rows)
    ds2 = ScoreDataset.from_arrays(list(s2), g=list(g2))
    p1, p2 = partition(ds1, ["g"]), partition(ds2, ["g"])
    assert p1.groups.keys() == p2.groups.keys()
    for k in p1.groups:
        assert sorted(p1.groups[k]) == sorted(p2.groups[k])
    assert sum(p1.counts.values()) == len(ds1)


@given(st.lists(st.lists(st.floats(0, 1), min_size=100, max_size=100), min_size=2, max_size=2),
       st.integers(0, 99), st.floats(0, 1), weights)
def test_aggregates_monotone_in_curve(vals, idx, bump, w):
    grid = ProportionGrid()
    lo = np.array(vals[0])
    hi = lo.copy()
    hi[idx] = max(hi[idx], bump)
    prior = ProportionPrior.custom(w)
    c_lo = DiCurve(grid, {("a",): lo, ("b",): np.ones(100)})
    c_hi = DiCurve(grid, {("a",): hi, ("b",): np.ones(100)})
    assert auc_di(c_hi, prior)["a"] >= auc_di(c_lo, prior)["a"]
    assert pf_di(c_hi, prior)["a"] >= pf_di(c_lo, prior)["a"]


@given(groups)
def test_flat_pf_on_hundredths_lattice(g):
    pf = pf_di(di_curve(make_partition(**g)))
    for v in pf.values.values():
        assert v == round(v, 2)
        assert v == round(v * 100) / 100


@given(groups, st.floats(0.05, 1.0))
def test_all_fair_implies_auc_above_bound(g, bound):
    c = di_curve(make_partition(**g))
    pf, auc = pf_di(c, fairness_bound=bound), auc_di(c)
    for k, v in pf.values.items():
        if v == 1.0:
            assert auc[k] >= bound


@given(groups, weights, st.floats(1e-3, 1e3))
def test_prior_scale_invariance(g, w, scale):
    c = di_curve(make_partition(**g))
    p1 = ProportionPrior.custom(w)
    p2 = ProportionPrior.custom(np.asarray(w) * scale)
    for k in c.values:
        assert abs(auc_di(c, p1)[k] - auc_di(c, p2)[k]) <= 1e-12
        assert abs(pf_di(c, p1)[k] - pf_di(c, p2)[k]) <= 1e-12


@given(group, group)
def test_ks_symmetric_and_transform_invariant(a, b):
    d = ks_statistic(a, b).statistic
    assert 0 <= d <= 1
    assert d == ks_statistic(b, a).statistic
    assert d == ks_statistic(np.exp(np.asarray(a) / 10), np.exp(np.asarray(b) / 10)).statistic


@settings(max_examples=50)
@given(groups, st.integers(1, 99))
def test_delta_prior_sifts(g, k):
    part = make_partition(**g)
    c = di_curve(part)
    auc = auc_di(c, ProportionPrior.delta(k / 100))
    pf = pf_di(c, ProportionPrior.delta(k / 100))
    point = bin_di_at(part, k / 100)
    assert auc.values == point.values
    assert set(pf.values.values()) <= {0.0, 1.0}
