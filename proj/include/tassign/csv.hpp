// Copyright 2026 The tassign Authors
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

#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "tassign/errors.hpp"
#include "tassign/util.hpp"

namespace tassign {

/// Line-buffered CSV writer. Numbers are written in shortest round-trip
/// form, so identical data produces byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw ValidationError("cannot open '" + path + "' for writing");
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((write_cell(cells, first), first = false), ...);
    out_ << '\n';
  }

 private:
  void write_cell(const std::string& v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(const char* v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(double v, bool first) {
    if (!first) out_ << ',';
    out_ << format_double(v);
  }
  void write_cell(std::int64_t v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }
  void write_cell(int v, bool first) { write_cell(std::int64_t{v}, first); }
  void write_cell(std::uint64_t v, bool first) {
    if (!first) out_ << ',';
    out_ << v;
  }

  std::ofstream out_;
};

}  // namespace tassign
