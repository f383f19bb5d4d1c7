import random
from collections import Counter

import pytest

from psu4designs.geometry import (
    ISOTROPIC,
    NONSQUARE_TYPE,
    SQUARE_TYPE,
    PrimeField,
    ProjectivePoint,
    QuadraticSpace,
    classify_point,
    design_space,
    diagonal_space,
    perp_set,
    pg_hyperplanes,
    projective_points,
    reflection,
)


def test_projective_point_counts():
    assert len(projective_points(5, 3)) == 121
    assert len(projective_points(4, 3)) == 40
    assert len(projective_points(1, 3)) == 1


def test_point_normalization_canonical():
    p = ProjectivePoint.from_vector((0, 2, 1, 0, 2), 3)
    assert p.coords[next(i for i, c in enumerate(p.coords) if c)] == 1
    assert ProjectivePoint.from_vector((0, 1, 2, 0, 1), 3) == p


def test_classification_counts():
    space = design_space()
    counts = Counter(classify_point(space, x) for x in projective_points(5, 3))
    assert counts == {ISOTROPIC: 40, SQUARE_TYPE: 36, NONSQUARE_TYPE: 45}


def test_classification_examples():
    space = design_space()
    assert classify_point(space, ProjectivePoint((1, 0, 0, 0, 0))) == SQUARE_TYPE
    assert classify_point(space, ProjectivePoint((1, 1, 0, 0, 0))) == NONSQUARE_TYPE


def test_classification_scaling_invariant():
    space = design_space()
    rng = random.Random(5)
    points = projective_points(5, 3)
    for _ in range(50):
        x = rng.choice(points)
        scaled = tuple(2 * c % 3 for c in x.coords)
        y = ProjectivePoint.from_vector(scaled, 3)
        assert classify_point(space, x) == classify_point(space, y)


def test_perp_set_sizes():
    space = design_space()
    points = projective_points(5, 3)
    by_class = {}
    for x in points:
        by_class.setdefault(classify_point(space, x), []).append(x)
    assert {len(perp_set(space, x, by_class[SQUARE_TYPE])) for x in by_class[SQUARE_TYPE]} == {15}
    assert {len(perp_set(space, x, by_class[NONSQUARE_TYPE])) for x in by_class[NONSQUARE_TYPE]} == {12}
    assert {len(perp_set(space, x, by_class[ISOTROPIC])) for x in by_class[ISOTROPIC]} == {13}


def test_reflection_defining_properties():
    space = design_space()
    p = 3
    v = (1, 1, 0, 0, 0)
    assert space.form(v) != 0
    m = reflection(space, v)
    image_v = tuple(sum(m[i][j] * v[j] for j in range(5)) % p for i in range(5))
    assert image_v == tuple(-c % p for c in v)
    # fixes the mirror
    w = (0, 0, 1, 0, 0)
    assert space.bilinear(v, w) == 0
    image_w = tuple(sum(m[i][j] * w[j] for j in range(5)) % p for i in range(5))
    assert image_w == w
    # involution
    square = tuple(
        tuple(sum(m[i][k] * m[k][j] for k in range(5)) % p for j in range(5))
        for i in range(5)
    )
    assert square == tuple(tuple(1 if i == j else 0 for j in range(5)) for i in range(5))


def test_reflections_are_isometries():
    space = design_space()
    p = 3
    gram = space.gram
    for v in projective_points(5, 3):
        if classify_point(space, v) == ISOTROPIC:
            with pytest.raises(ValueError):
                reflection(space, v)
            continue
        m = reflection(space, v)
        mtgm = tuple(
            tuple(
                sum(m[a][i] * gram[a][b] * m[b][j] for a in range(5) for b in range(5)) % p
                for j in range(5)
            )
            for i in range(5)
        )
        assert mtgm == tuple(tuple(c % p for c in row) for row in gram)


def test_pg_hyperplanes_40_13_4():
    blocks = pg_hyperplanes(4, 3)
    assert len(blocks) == 40
    assert all(len(b) == 13 for b in blocks)
    for i in range(40):
        for j in range(i + 1, 40):
            assert len(set(blocks[i]) & set(blocks[j])) == 4


def test_pg_hyperplanes_fano():
    blocks = pg_hyperplanes(3, 2)
    assert len(blocks) == 7
    assert all(len(b) == 3 for b in blocks)
    for i in range(7):
        for j in range(i + 1, 7):
            assert len(set(blocks[i]) & set(blocks[j])) == 1


def test_space_validation():
    with pytest.raises(ValueError):
        diagonal_space(2, (1, 1))  # characteristic 2 excluded
    with pytest.raises(ValueError):
        QuadraticSpace(PrimeField(3), 2, ((1, 1), (0, 1)))  # not symmetric
    with pytest.raises(ValueError):
        diagonal_space(3, (1, 0))  # degenerate
    with pytest.raises(ValueError):
        PrimeField(12)
    with pytest.raises(ValueError):
        PrimeField(263)  # beyond the supported modulus range


def test_field_inverse():
    f = PrimeField(7)
    for x in range(1, 7):
        assert f.inv(x) * x % 7 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_projective_points_accepts_space():
    space = design_space()
    assert projective_points(space) == projective_points(5, 3)
    with pytest.raises(TypeError):
        projective_points(5)
