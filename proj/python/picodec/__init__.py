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


"""PDE-based sparse-pixel image codec."""

from ._picodec import (
    Error,
    add_noise,
    decode,
    denoise,
    encode,
    harmonic_inpaint,
    implicit_step,
    laplacian,
    linear_filter,
    load_pgm,
    rmse8,
    save_pgm,
)

__all__ = [
    "Error",
    "add_noise",
    "decode",
    "denoise",
    "encode",
    "harmonic_inpaint",
    "implicit_step",
    "laplacian",
    "linear_filter",
    "load_pgm",
    "rmse8",
    "save_pgm",
]
