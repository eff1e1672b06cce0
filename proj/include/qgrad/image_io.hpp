// Copyright 2026 The qgrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGRAD_IMAGE_IO_HPP
#define QGRAD_IMAGE_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qgrad/image.hpp"

namespace qgrad {

/// Decodes a binary PGM (P5, maxval 255) or an 8-bit PNG (grayscale or RGB).
/// RGB inputs are converted with the BT.601 weights 0.299R + 0.587G + 0.114B
/// rounded to nearest. Anything else is rejected.
GrayImage load_grayscale(const std::string &path);

void save_pgm(const GrayImage &img, const std::string &path);

void save_png_gray(const GrayImage &img, const std::string &path);

/// Writes interleaved 8-bit RGB (3 * width * height bytes).
void save_png_rgb(const std::vector<std::uint8_t> &rgb, int width, int height,
                  const std::string &path);

} // namespace qgrad

#endif
