import numpy as np
import pytest

from braille2text.image import (
    BinaryImage,
    GrayImage,
    ImageFormatError,
    Rect,
    histogram,
    load_image,
    load_pgm,
    save_pgm,
)


def test_load_pgm_hand_built_file():
    # 2x2 image written out by hand: header then 4 payload bytes.
    blob = b"P5\n2 2\n255\n" + bytes([0, 128, 200, 255])
    img = load_pgm(blob)
    assert (img.width, img.height) == (2, 2)
    assert img.pixels.tolist() == [[0, 128], [200, 255]]


def test_load_pgm_accepts_header_comments_and_odd_whitespace():
    blob = b"P5 # comment\n# another\n 3\t1 \n255 " + bytes([7, 8, 9])
    img = load_pgm(blob)
    assert img.pixels.tolist() == [[7, 8, 9]]


@pytest.mark.parametrize(
    "blob",
    [
        b"P6\n2 2\n255\n" + bytes(12),          # wrong magic
        b"P5\n2 2\n65535\n" + bytes(8),          # wrong maxval
        b"P5\n2 2\n255\n" + bytes(3),            # short payload
        b"P5\n0 2\n255\n",                       # zero dimension
        b"P5\nx 2\n255\n" + bytes(4),            # non-numeric field
    ],
)
def test_load_pgm_rejects_malformed(blob):
    with pytest.raises(ImageFormatError):
        load_pgm(blob)


def test_pgm_round_trip_is_bit_exact():
    rng = np.random.default_rng(11)
    img = GrayImage(rng.integers(0, 256, size=(37, 23), dtype=np.uint8))
    assert load_pgm(save_pgm(img)) == img


def test_save_pgm_writes_file(tmp_path):
    img = GrayImage(np.arange(6, dtype=np.uint8).reshape(2, 3))
    path = tmp_path / "x.pgm"
    save_pgm(img, path)
    assert load_pgm(path) == img


def test_grayimage_rejects_bad_input():
    with pytest.raises(ValueError):
        GrayImage(np.zeros((2, 2, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        GrayImage(np.zeros((0, 4), dtype=np.uint8))
    with pytest.raises(ValueError):
        GrayImage(np.full((2, 2), 300, dtype=np.int32))
    with pytest.raises(ValueError):
        GrayImage(np.zeros((2, 2), dtype=np.float64))


def test_grayimage_is_immutable():
    img = GrayImage(np.zeros((2, 2), dtype=np.uint8))
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 5
    with pytest.raises(AttributeError):
        img.pixels = None


def test_histogram_counts_sum_to_pixel_count():
    rng = np.random.default_rng(3)
    img = GrayImage(rng.integers(0, 256, size=(19, 31), dtype=np.uint8))
    hist = histogram(img)
    assert hist.shape == (256,)
    assert hist.sum() == 19 * 31
    assert hist[50] == int((img.pixels == 50).sum())


def test_crop_extracts_exact_window():
    img = GrayImage(np.arange(30, dtype=np.uint8).reshape(5, 6))
    sub = img.crop(Rect(x=2, y=1, w=3, h=2))
    assert sub.pixels.tolist() == [[8, 9, 10], [14, 15, 16]]
    with pytest.raises(ValueError):
        img.crop(Rect(x=4, y=0, w=3, h=2))


def test_rect_validation():
    with pytest.raises(ValueError):
        Rect(x=0, y=0, w=0, h=3)
    with pytest.raises(ValueError):
        Rect(x=-1, y=0, w=2, h=2)


def test_binary_image_basics():
    b = BinaryImage(np.array([[1, 0], [1, 1]]))
    assert b.count() == 3
    assert b.crop(Rect(0, 0, 1, 2)).count() == 2


def test_load_image_png_matches_pgm_content(tmp_path):
    from PIL import Image

    rng = np.random.default_rng(5)
    arr = rng.integers(0, 256, size=(12, 17), dtype=np.uint8)
    png_path = tmp_path / "scan.png"
    Image.fromarray(arr, mode="L").save(png_path)
    assert load_image(png_path) == GrayImage(arr)


def test_load_image_rejects_color_png(tmp_path):
    from PIL import Image

    arr = np.zeros((4, 4, 3), dtype=np.uint8)
    path = tmp_path / "c.png"
    Image.fromarray(arr, mode="RGB").save(path)
    with pytest.raises(ImageFormatError):
        load_image(path)
