import pytest

from mdyck.series import (
    TruncatedSeries,
    check_lemform,
    check_series_identities,
    fuss_catalan,
    geometric_inverse,
    series_compose,
    series_solve_free,
)


def test_fuss_catalan_values():
    assert fuss_catalan(1, 3) == 5
    assert fuss_catalan(2, 3) == 12
    assert all(fuss_catalan(m, 1) == 1 for m in range(1, 8))
    assert [fuss_catalan(2, n) for n in range(1, 6)] == [1, 3, 12, 55, 273]
    assert [fuss_catalan(3, n) for n in range(1, 5)] == [1, 4, 22, 140]


def test_fuss_catalan_rejects_bad_input():
    with pytest.raises(ValueError):
        fuss_catalan(0, 2)


def test_solve_free_catalan():
    f = series_solve_free(1, 5)
    assert f.coeffs == (0, 1, 2, 5, 14, 42)


def test_solve_free_m2():
    f = series_solve_free(2, 5)
    assert f.coeffs == (0, 1, 3, 12, 55, 273)


def test_first_coefficients():
    # degree-1 component is one-dimensional; degree 2 has one basis tree
    # per admissible root color, m+1 of them
    for m in range(1, 5):
        f = series_solve_free(m, 3)
        assert f.coeffs[1] == 1
        assert f.coeffs[2] == m + 1 == fuss_catalan(m, 2)


def test_compose_identities():
    order = 6
    x = TruncatedSeries.x(order)
    f = series_solve_free(2, order)
    assert series_compose(f, x) == f
    assert series_compose(x, f) == f
    g = TruncatedSeries.from_coeffs(order, (0, 1, 1))  # x + x^2
    assert series_compose(g, g) == TruncatedSeries.from_coeffs(
        order, (0, 1, 2, 2, 1)
    )


def test_compose_requires_zero_constant():
    order = 4
    with pytest.raises(ValueError):
        series_compose(TruncatedSeries.x(order), TruncatedSeries.one(order))


def test_lemform():
    assert check_lemform(3, 3, 10).ok  # k = m: identity substitution
    assert check_lemform(2, 1, 10).ok
    assert check_lemform(4, 0, 10).ok


def test_geometric_inverse_relations():
    order = 10
    x = TruncatedSeries.x(order)
    for m in range(1, 5):
        g = geometric_inverse(m, order)
        assert series_compose(series_solve_free(m, order), g) == x
        one_plus_x = TruncatedSeries.from_coeffs(order, (1, 1))
        assert one_plus_x * g == geometric_inverse(m - 1, order)


def test_all_series_identities():
    report = check_series_identities(4, 10)
    assert report.ok, report.failures
