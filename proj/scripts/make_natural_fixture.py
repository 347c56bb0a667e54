#!/usr/bin/env python3
"""Build the bundled natural-photo test fixture.

Crops random square windows out of the stock photos shipped with
scikit-image, scikit-learn and matplotlib, area-resamples each crop to
32x32 and writes the result in CIFAR-10 binary record layout
(1 label byte + 3x1024 plane bytes). The label is the index of the
source photo, see SOURCES below.
"""
import argparse
import os

import matplotlib
import numpy as np
import skimage.data
import skimage.io
import sklearn.datasets
from skimage.transform import resize


def load_sources():
    mpl = os.path.join(matplotlib.get_data_path(), "sample_data", "grace_hopper.jpg")
    china, flower = sklearn.datasets.load_sample_images().images
    left, right, _ = skimage.data.stereo_motorcycle()
    return [
        ("astronaut", skimage.data.astronaut()),
        ("coffee", skimage.data.coffee()),
        ("chelsea", skimage.data.chelsea()),
        ("rocket", skimage.data.rocket()),
        ("motorcycle_left", left),
        ("motorcycle_right", right),
        ("china", china),
        ("flower", flower),
        ("grace_hopper", skimage.io.imread(mpl)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    sources = load_sources()
    rng = np.random.default_rng(args.seed)
    with open(args.out, "wb") as f:
        for _ in range(args.count):
            label = int(rng.integers(len(sources)))
            img = sources[label][1][..., :3]
            h, w = img.shape[:2]
            side = int(rng.integers(min(h, w) // 4, min(h, w) + 1))
            y = int(rng.integers(0, h - side + 1))
            x = int(rng.integers(0, w - side + 1))
            crop = resize(img[y:y + side, x:x + side], (32, 32),
                          anti_aliasing=True, preserve_range=True)
            px = np.clip(np.round(crop), 0, 255).astype(np.uint8)
            f.write(bytes([label]))
            f.write(px.transpose(2, 0, 1).tobytes())
    with open(os.path.splitext(args.out)[0] + ".classes.txt", "w") as f:
        f.write("\n".join(name for name, _ in sources) + "\n")


if __name__ == "__main__":
    main()
