// Copyright 2026 The Sonir Authors. All rights reserved.
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

// Regenerates the JSON program files under corpus/ from the builders in
// corpus.hpp. Run after changing a corpus program definition.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "sonir/corpus.hpp"
#include "sonir/json_io.hpp"

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "corpus";
  std::filesystem::create_directories(dir);
  for (const auto& [name, program] : sonir::corpus::all()) {
    std::filesystem::path path = dir / (name + ".json");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    out << sonir::serialize_program(program);
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}
