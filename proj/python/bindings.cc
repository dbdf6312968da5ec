// Copyright 2026 The picodec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings. Images cross the boundary as float64 (height, width)
// arrays, masks as bool arrays of the same shape.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "picodec/codec.h"
#include "picodec/diffusion.h"
#include "picodec/encoders.h"
#include "picodec/error.h"
#include "picodec/image_ops.h"
#include "picodec/pgm.h"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

picodec::Image ToImage(const DoubleArray& a) {
  if (a.ndim() != 2) throw py::value_error("image must be a 2-D array");
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  std::vector<double> data(a.data(), a.data() + a.size());
  return picodec::Image(w, h, std::move(data));
}

picodec::Mask ToMask(const BoolArray& a) {
  if (a.ndim() != 2) throw py::value_error("mask must be a 2-D array");
  picodec::Mask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  const bool* p = a.data();
  for (std::size_t i = 0; i < m.size(); ++i) m.Set(i, p[i]);
  return m;
}

py::array_t<double> FromImage(const picodec::Image& img) {
  py::array_t<double> out({img.height(), img.width()});
  std::memcpy(out.mutable_data(), img.values().data(), img.size() * sizeof(double));
  return out;
}

py::array_t<bool> FromMask(const picodec::Mask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  bool* p = out.mutable_data();
  for (std::size_t i = 0; i < m.size(); ++i) p[i] = m.Test(i);
  return out;
}

picodec::Method ParseMethod(const std::string& name) {
  static const std::pair<const char*, picodec::Method> kTable[] = {
      {"h1", picodec::Method::kH1},          {"l2-insta", picodec::Method::kL2Insta},
      {"l2-dec", picodec::Method::kL2Dec},   {"l2-inc", picodec::Method::kL2Inc},
      {"l2-inc-t-e", picodec::Method::kL2IncTE}, {"spar", picodec::Method::kSpar},
      {"dens", picodec::Method::kDens},
  };
  for (const auto& [key, m] : kTable) {
    if (name == key) return m;
  }
  throw py::value_error("unknown method: " + name);
}

picodec::ThresholdMode ParseThreshold(const std::string& name) {
  if (name == "hard") return picodec::ThresholdMode::kHard;
  if (name == "fs") return picodec::ThresholdMode::kSoftFs;
  if (name == "lloyd") return picodec::ThresholdMode::kSoftLloyd;
  throw py::value_error("threshold must be hard, fs or lloyd");
}

picodec::DenoiseMethod ParseDenoiseMethod(const std::string& name) {
  if (name == "l2-insta-t") return picodec::DenoiseMethod::kL2InstaT;
  if (name == "l2-insta-h") return picodec::DenoiseMethod::kL2InstaH;
  if (name == "l2-inc-t") return picodec::DenoiseMethod::kL2IncT;
  if (name == "l2-inc-h") return picodec::DenoiseMethod::kL2IncH;
  throw py::value_error("unknown denoise method: " + name);
}

py::bytes ToBytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

PYBIND11_MODULE(_picodec, m) {
  m.doc() = "PDE-based sparse-pixel image codec.";

  static py::exception<picodec::Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const picodec::Error& e) {
      std::string msg = std::string(picodec::ErrorCodeName(e.code())) + ": " + e.what();
      PyErr_SetString(error.ptr(), msg.c_str());
    }
  });

  m.def("load_pgm", [](const std::string& path) { return FromImage(picodec::LoadPgm(path)); },
        py::arg("path"));
  m.def("save_pgm",
        [](const DoubleArray& img, const std::string& path) { picodec::SavePgm(ToImage(img), path); },
        py::arg("image"), py::arg("path"));

  m.def("add_noise",
        [](const DoubleArray& img, double sigma, std::uint64_t seed) {
          return FromImage(picodec::AddGaussianNoise(ToImage(img), {sigma, seed}));
        },
        py::arg("image"), py::arg("sigma"), py::arg("seed") = 0);
  m.def("laplacian", [](const DoubleArray& img) { return FromImage(picodec::Laplacian(ToImage(img))); },
        py::arg("image"));
  m.def("rmse8",
        [](const DoubleArray& a, const DoubleArray& b) { return picodec::Rmse8(ToImage(a), ToImage(b)); },
        py::arg("a"), py::arg("b"));

  m.def("harmonic_inpaint",
        [](const BoolArray& mask, const DoubleArray& data) {
          return FromImage(picodec::HarmonicInpaint(ToMask(mask), ToImage(data)));
        },
        py::arg("mask"), py::arg("data"));
  m.def("implicit_step",
        [](const DoubleArray& u, const BoolArray& mask, const DoubleArray& dirichlet, double alpha) {
          return FromImage(
              picodec::ImplicitStep(ToImage(u), ToMask(mask), ToImage(dirichlet), alpha));
        },
        py::arg("u"), py::arg("mask"), py::arg("dirichlet"), py::arg("alpha"));

  // Returns a dict with mask, tonal, reconstruction, iterations and the
  // serialized payload.
  m.def("encode",
        [](const DoubleArray& img, const std::string& method, double density, double alpha,
           int iterations, std::optional<double> fraction, const std::string& threshold,
           std::uint64_t seed) {
          picodec::EncoderConfig cfg;
          cfg.density_c = density;
          cfg.alpha = alpha;
          cfg.iterations_n = iterations;
          cfg.fraction_q = fraction;
          cfg.threshold = ParseThreshold(threshold);
          cfg.seed = seed;
          const picodec::Image f = ToImage(img);
          const picodec::Method mth = ParseMethod(method);
          picodec::EncodeResult r;
          {
            py::gil_scoped_release release;
            r = picodec::Encode(mth, f, cfg);
          }
          py::dict out;
          out["mask"] = FromMask(r.mask);
          out["tonal"] = FromImage(r.tonal);
          out["reconstruction"] = FromImage(r.u_final);
          out["iterations"] = r.iterations;
          out["payload"] = ToBytes(picodec::Serialize(r, cfg));
          return out;
        },
        py::arg("image"), py::arg("method"), py::arg("density"), py::arg("alpha") = 0.05,
        py::arg("iterations") = 1, py::arg("fraction") = py::none(),
        py::arg("threshold") = "hard", py::arg("seed") = 0);

  m.def("decode",
        [](const py::bytes& payload) {
          const std::string s = payload;
          const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
          picodec::Payload pl = picodec::Deserialize(std::span<const std::uint8_t>(p, s.size()));
          py::gil_scoped_release release;
          picodec::Image out = picodec::Decode(pl);
          py::gil_scoped_acquire acquire;
          return FromImage(out);
        },
        py::arg("payload"));

  m.def("denoise",
        [](const DoubleArray& noisy, const std::string& method, double sigma) {
          const picodec::DenoiseMethod dm = ParseDenoiseMethod(method);
          const picodec::EncoderConfig cfg = picodec::DenoisePreset(dm, sigma);
          const picodec::Image f = ToImage(noisy);
          picodec::Image out;
          {
            py::gil_scoped_release release;
            out = picodec::Denoise(f, cfg, dm);
          }
          return FromImage(out);
        },
        py::arg("noisy"), py::arg("method") = "l2-inc-t", py::arg("sigma") = 0.05);

  m.def("linear_filter",
        [](const DoubleArray& img, double eta, int steps) {
          return FromImage(picodec::LinearDiffusionFilter(ToImage(img), eta, steps));
        },
        py::arg("image"), py::arg("eta"), py::arg("steps") = 10);
}
