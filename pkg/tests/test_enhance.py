import numpy as np
import pytest

from braille2text.enhance import (
    EnhanceError,
    PiecewiseParams,
    autocrop_content,
    contrast_stretch,
    dilate,
    edge_map,
    erode,
    gaussian_kernel,
    gaussian_smooth,
    intensity_adjust,
    morph_close,
    morph_open,
    prewitt_gradients,
    relative_threshold,
)
from braille2text.image import BinaryImage, GrayImage


def gray(vals):
    return GrayImage(np.asarray(vals, dtype=np.uint8))


def random_gray(rng, h=16, w=16):
    return GrayImage(rng.integers(0, 256, size=(h, w), dtype=np.uint8))


# ---------------------------------------------------------------- oracles

def oracle_prewitt(arr):
    """Direct kernel application, one pixel at a time, edge-replicated."""
    kx = np.array([[-1, 0, 1], [-1, 0, 1], [-1, 0, 1]], dtype=np.int64)
    ky = kx.T
    h, w = arr.shape
    padded = np.pad(arr.astype(np.int64), 1, mode="edge")
    gx = np.zeros((h, w), dtype=np.int64)
    gy = np.zeros((h, w), dtype=np.int64)
    for i in range(h):
        for j in range(w):
            win = padded[i : i + 3, j : j + 3]
            gx[i, j] = int((win * kx).sum())
            gy[i, j] = int((win * ky).sum())
    return gx, gy


def oracle_gaussian_dense(arr, sigma):
    """Full 2-D convolution with the outer-product kernel; one rounding."""
    k1 = gaussian_kernel(sigma)
    k2 = np.outer(k1, k1)
    r = len(k1) // 2
    padded = np.pad(arr.astype(np.float64), r, mode="edge")
    h, w = arr.shape
    out = np.zeros((h, w), dtype=np.float64)
    for i in range(h):
        for j in range(w):
            out[i, j] = (padded[i : i + 2 * r + 1, j : j + 2 * r + 1] * k2).sum()
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)


def oracle_disk_rank(arr, radius, fn):
    """Pointwise min/max over the inclusive Euclidean disk, clamped borders."""
    h, w = arr.shape
    out = np.empty_like(arr)
    offs = [
        (dy, dx)
        for dy in range(-radius, radius + 1)
        for dx in range(-radius, radius + 1)
        if dy * dy + dx * dx <= radius * radius
    ]
    for i in range(h):
        for j in range(w):
            vals = [
                arr[min(max(i + dy, 0), h - 1), min(max(j + dx, 0), w - 1)]
                for dy, dx in offs
            ]
            out[i, j] = fn(vals)
    return out


# ------------------------------------------------------- contrast stretch

def test_contrast_stretch_closed_form_value():
    # Anchors (0,0),(50,0),(200,255),(255,255): 125 sits halfway up the
    # middle segment -> 255*75/150 = 127.5 -> rounds half-up to 128.
    img = gray([[125]])
    out = contrast_stretch(img, PiecewiseParams(50, 0, 200, 255))
    assert out.pixels[0, 0] == 128


def test_contrast_stretch_fixed_points_and_knees():
    params = PiecewiseParams(60, 20, 180, 240)
    lut_in = gray([np.arange(256, dtype=np.uint8)])
    out = contrast_stretch(lut_in, params).pixels[0]
    assert out[0] == 0 and out[255] == 255
    assert out[60] == 20 and out[180] == 240
    # piecewise-linear in between: midpoint of (60,20)-(180,240)
    assert out[120] == 130


def test_contrast_stretch_monotone_for_any_valid_params():
    rng = np.random.default_rng(7)
    ramp = gray([np.arange(256, dtype=np.uint8)])
    for _ in range(50):
        r1 = int(rng.integers(0, 254))
        r2 = int(rng.integers(r1 + 1, 256))
        s1 = int(rng.integers(0, 256))
        s2 = int(rng.integers(s1, 256))
        out = contrast_stretch(ramp, PiecewiseParams(r1, s1, r2, s2)).pixels[0]
        assert (np.diff(out.astype(int)) >= 0).all()


def test_contrast_stretch_rejects_bad_knees():
    with pytest.raises(EnhanceError):
        PiecewiseParams(200, 0, 100, 255)
    with pytest.raises(EnhanceError):
        PiecewiseParams(10, 200, 20, 100)


# ------------------------------------------------------- intensity adjust

def test_intensity_adjust_closed_form_value():
    # [100,200] -> [0,255]; 150 -> 255*50/100 = 127.5 -> 128.
    out = intensity_adjust(gray([[150]]), 100, 200)
    assert out.pixels[0, 0] == 128


def test_intensity_adjust_clamps_outside_range():
    out = intensity_adjust(gray([[0, 99, 100, 200, 201, 255]]), 100, 200)
    assert out.pixels[0].tolist() == [0, 0, 0, 255, 255, 255]


def test_intensity_adjust_rejects_bad_range():
    img = gray([[1]])
    for low, high in [(200, 100), (5, 5), (-1, 10), (0, 300)]:
        with pytest.raises(EnhanceError):
            intensity_adjust(img, low, high)


# ------------------------------------------------------- gaussian smooth

def test_gaussian_kernel_radius_and_normalization():
    k = gaussian_kernel(1.0)
    assert len(k) == 7  # radius ceil(3*1.0) = 3
    assert abs(k.sum() - 1.0) < 1e-12
    assert len(gaussian_kernel(1.4)) == 2 * 5 + 1


def test_gaussian_smooth_matches_dense_oracle_within_one():
    rng = np.random.default_rng(21)
    for sigma in (0.8, 1.0, 1.7):
        arr = rng.integers(0, 256, size=(14, 11), dtype=np.uint8)
        got = gaussian_smooth(GrayImage(arr), sigma).pixels.astype(int)
        want = oracle_gaussian_dense(arr, sigma).astype(int)
        assert np.abs(got - want).max() <= 1


def test_gaussian_smooth_keeps_constant_image():
    img = gray(np.full((9, 9), 173))
    out = gaussian_smooth(img, 1.3)
    assert np.abs(out.pixels.astype(int) - 173).max() <= 1


def test_gaussian_smooth_rejects_nonpositive_sigma():
    with pytest.raises(EnhanceError):
        gaussian_smooth(gray([[1]]), 0.0)


# ------------------------------------------------------------ morphology

def test_erode_dilate_match_disk_oracle():
    rng = np.random.default_rng(31)
    for radius in (1, 2, 3):
        arr = rng.integers(0, 256, size=(12, 12), dtype=np.uint8)
        assert np.array_equal(
            erode(GrayImage(arr), radius).pixels, oracle_disk_rank(arr, radius, min)
        )
        assert np.array_equal(
            dilate(GrayImage(arr), radius).pixels, oracle_disk_rank(arr, radius, max)
        )


def test_morph_open_kills_single_bright_pixel():
    arr = np.zeros((7, 7), dtype=np.uint8)
    arr[3, 3] = 255
    out = morph_open(GrayImage(arr), 1)
    assert out.pixels.max() == 0


def test_morph_close_kills_single_dark_pixel():
    arr = np.full((7, 7), 200, dtype=np.uint8)
    arr[3, 3] = 0
    out = morph_close(GrayImage(arr), 1)
    assert out.pixels.min() == 200


def test_morph_open_idempotent_and_anti_extensive():
    rng = np.random.default_rng(47)
    for _ in range(100):
        img = random_gray(rng)
        once = morph_open(img, 2)
        assert (once.pixels.astype(int) <= img.pixels.astype(int)).all()
        assert morph_open(once, 2) == once


def test_morph_close_idempotent_and_extensive():
    rng = np.random.default_rng(53)
    for _ in range(100):
        img = random_gray(rng)
        once = morph_close(img, 2)
        assert (once.pixels.astype(int) >= img.pixels.astype(int)).all()
        assert morph_close(once, 2) == once


def test_morph_rejects_bad_radius():
    with pytest.raises(EnhanceError):
        morph_open(gray([[0]]), 0)


# ---------------------------------------------------------------- prewitt

def test_prewitt_matches_bruteforce_oracle_on_random_images():
    rng = np.random.default_rng(63)
    for _ in range(100):
        arr = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
        pair = prewitt_gradients(GrayImage(arr))
        gx, gy = oracle_prewitt(arr)
        assert np.array_equal(pair.gx, gx)
        assert np.array_equal(pair.gy, gy)


def test_prewitt_sign_and_step_response():
    # Vertical step 0|9: both columns adjacent to the step see gx = 3*9.
    arr = np.array([[0, 0, 9, 9]] * 4, dtype=np.uint8)
    pair = prewitt_gradients(GrayImage(arr))
    assert pair.gx[1].tolist() == [0, 27, 27, 0]
    assert pair.gx.min() >= 0  # brightening to the right is positive
    assert np.array_equal(pair.gy, np.zeros_like(pair.gy))


def test_prewitt_transpose_symmetry():
    rng = np.random.default_rng(71)
    arr = rng.integers(0, 256, size=(9, 13), dtype=np.uint8)
    pair = prewitt_gradients(GrayImage(arr))
    pair_t = prewitt_gradients(GrayImage(arr.T.copy()))
    assert np.array_equal(pair.gy, pair_t.gx.T)


# --------------------------------------------------------------- edge map

def test_edge_map_345_triangle():
    # gx=3, gy=4 -> magnitude exactly 5: strict comparison.
    pair_like = prewitt_gradients(gray([[0]]))  # shape donor
    from braille2text.enhance import GradientPair

    g = GradientPair(gx=np.array([[3]]), gy=np.array([[4]]))
    assert edge_map(g, 4.99).pixels[0, 0]
    assert not edge_map(g, 5.0).pixels[0, 0]
    assert pair_like.gx.shape == (1, 1)


def test_edge_map_monotone_in_threshold():
    rng = np.random.default_rng(83)
    arr = rng.integers(0, 256, size=(20, 20), dtype=np.uint8)
    g = prewitt_gradients(GrayImage(arr))
    prev = None
    for t in (10, 50, 120, 300, 800):
        fg = edge_map(g, t).count()
        if prev is not None:
            assert fg <= prev
        prev = fg


def test_relative_threshold_fraction_of_max():
    g = prewitt_gradients(gray([[0, 0, 90, 90]] * 4))
    t = relative_threshold(g, 0.25)
    assert t == pytest.approx(0.25 * 270.0)
    with pytest.raises(EnhanceError):
        relative_threshold(g, 1.5)


# --------------------------------------------------------------- autocrop

def test_autocrop_drops_border_components_hand_grid():
    # 12x12: an L-shaped blob touching the top border, one interior blob.
    arr = np.zeros((12, 12), dtype=bool)
    arr[0, 2:6] = True   # touches border -> dropped
    arr[1, 2] = True
    arr[6:8, 5:9] = True  # interior content
    rect = autocrop_content(BinaryImage(arr), margin=1)
    assert (rect.x, rect.y, rect.x1, rect.y1) == (4, 5, 10, 9)


def test_autocrop_diagonal_touch_counts_as_connected():
    # Diagonal chain from the border must be dropped under 8-connectivity.
    arr = np.zeros((8, 8), dtype=bool)
    arr[0, 0] = arr[1, 1] = arr[2, 2] = True
    arr[5, 5] = True
    rect = autocrop_content(BinaryImage(arr), margin=0)
    assert (rect.x, rect.y, rect.w, rect.h) == (5, 5, 1, 1)


def test_autocrop_margin_clamps_to_image():
    arr = np.zeros((6, 6), dtype=bool)
    arr[1, 1] = True
    rect = autocrop_content(BinaryImage(arr), margin=10)
    assert (rect.x, rect.y, rect.w, rect.h) == (0, 0, 6, 6)


def test_autocrop_errors_when_nothing_interior():
    empty = BinaryImage(np.zeros((5, 5), dtype=bool))
    with pytest.raises(EnhanceError):
        autocrop_content(empty)
    border_only = np.zeros((5, 5), dtype=bool)
    border_only[0, :] = True
    with pytest.raises(EnhanceError):
        autocrop_content(BinaryImage(border_only))
