# Copyright 2026 The picodec Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Regenerates chelsea256.pgm from the scikit-image sample data.

The source photograph is public domain (CC0). The image is converted to gray,
stretched to the full [0, 1] range,
centre-cropped to a square and resized to 256x256 with anti-aliasing.
"""

import pathlib

import numpy as np
from skimage import data
from skimage.color import rgb2gray
from skimage.transform import resize


def main():
    gray = rgb2gray(data.chelsea())
    gray = (gray - gray.min()) / (gray.max() - gray.min())
    h, w = gray.shape
    s = min(h, w)
    y0, x0 = (h - s) // 2, (w - s) // 2
    square = gray[y0:y0 + s, x0:x0 + s]
    small = resize(square, (256, 256), anti_aliasing=True)
    pixels = np.clip(np.floor(small * 255 + 0.5), 0, 255).astype(np.uint8)
    out = pathlib.Path(__file__).with_name("chelsea256.pgm")
    out.write_bytes(b"P5\n256 256\n255\n" + pixels.tobytes())


if __name__ == "__main__":
    main()
