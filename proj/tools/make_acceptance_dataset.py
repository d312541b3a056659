#!/usr/bin/env python3
"""Build a deterministic 28x28 handwritten-digit IDX dataset.

Produces train/test IDX files (2000/500 images) in the MNIST container
format. When real MNIST IDX files are available, point the acceptance suite
at them via CENTAGG_MNIST_DIR instead; this script exists so the experiment
suite can run in environments without the MNIST download, using the bundled
scikit-learn handwritten digits (8x8, upscaled) as the image source.
"""

import struct
import sys
from pathlib import Path

import numpy as np
from sklearn.datasets import load_digits

TRAIN_COUNT = 2000
TEST_COUNT = 500
SEED = 20240613


def upscale_28(images8: np.ndarray) -> np.ndarray:
    """8x8 [0,16] -> 28x28 uint8 [0,255] by 4x pixel repeat and a 2px crop."""
    big = images8.repeat(4, axis=1).repeat(4, axis=2)  # (n, 32, 32)
    cropped = big[:, 2:30, 2:30]
    return np.clip(cropped * (255.0 / 16.0), 0, 255).astype(np.uint8)


def write_idx_images(path: Path, images: np.ndarray) -> None:
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, images.shape[0], 28, 28))
        f.write(images.tobytes())


def write_idx_labels(path: Path, labels: np.ndarray) -> None:
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, labels.shape[0]))
        f.write(labels.astype(np.uint8).tobytes())


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: make_acceptance_dataset.py <output-dir>", file=sys.stderr)
        return 2
    out_dir = Path(sys.argv[1])
    out_dir.mkdir(parents=True, exist_ok=True)

    digits = load_digits()
    images = upscale_28(digits.images)  # (1797, 28, 28)
    labels = digits.target.astype(np.uint8)

    rng = np.random.RandomState(SEED)
    need = TRAIN_COUNT + TEST_COUNT

    # Augment with single-pixel shifts until we have enough samples.
    extra_idx = rng.permutation(len(images))[: need - len(images)]
    shifts = [(-1, 0), (1, 0), (0, -1), (0, 1)]
    extra = []
    for j, idx in enumerate(extra_idx):
        dy, dx = shifts[j % len(shifts)]
        extra.append(np.roll(np.roll(images[idx], dy, axis=0), dx, axis=1))
    images = np.concatenate([images, np.stack(extra)], axis=0)
    labels = np.concatenate([labels, labels[extra_idx]], axis=0)

    order = rng.permutation(need)
    images, labels = images[order], labels[order]

    write_idx_images(out_dir / "train-images-idx3-ubyte", images[:TRAIN_COUNT])
    write_idx_labels(out_dir / "train-labels-idx1-ubyte", labels[:TRAIN_COUNT])
    write_idx_images(out_dir / "t10k-images-idx3-ubyte", images[TRAIN_COUNT:need])
    write_idx_labels(out_dir / "t10k-labels-idx1-ubyte", labels[TRAIN_COUNT:need])
    print(f"wrote {TRAIN_COUNT} train / {TEST_COUNT} test images to {out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
