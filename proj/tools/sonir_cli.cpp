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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sonir/sonir.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFail = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

sonir::Program load_program(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  sonir::Program p = sonir::parse_program(buf.str());
  auto violations = sonir::validate_program(p);
  if (!violations.empty()) throw CliError{path + ": " + violations.front()};
  return p;
}

void save_program(const std::string& path, const sonir::Program& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{"cannot open " + path + " for writing"};
  out << sonir::serialize_program(p);
}

sonir::Value parse_value_arg(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw CliError{"expected BITS:VALUE, got '" + text + "'"};
  unsigned bits = 0;
  std::int64_t value = 0;
  try {
    bits = static_cast<unsigned>(std::stoul(text.substr(0, colon)));
    value = std::stoll(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw CliError{"expected BITS:VALUE, got '" + text + "'"};
  }
  if (!sonir::is_program_width(bits))
    throw CliError{"unsupported bit count in '" + text + "'"};
  return sonir::Value::of(bits, value);
}

std::vector<sonir::Phase> parse_phases_arg(const std::string& text) {
  auto phases = sonir::parse_phase_list(text);
  if (!phases) throw CliError{"unknown phase in '" + text + "'"};
  return *phases;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sea-of-nodes IR toolkit"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "execute a method and print its result");
  std::string run_file, run_method, run_expect;
  std::vector<std::string> run_args;
  run_cmd->add_option("file", run_file, "program file")->required();
  run_cmd->add_option("--method", run_method, "method name")->required();
  run_cmd->add_option("--arg", run_args, "argument as BITS:VALUE (repeatable)");
  run_cmd->add_option("--expect", run_expect, "expected result as BITS:VALUE");

  // opt
  auto* opt_cmd = app.add_subcommand("opt", "optimize a method and write the program");
  std::string opt_file, opt_method, opt_phases, opt_out;
  opt_cmd->add_option("file", opt_file, "program file")->required();
  opt_cmd->add_option("--method", opt_method, "method name")->required();
  opt_cmd->add_option("--phase", opt_phases, "ordered phase list, e.g. condelim,canonicalize")
      ->required();
  opt_cmd->add_option("--out", opt_out, "output file")->required();

  // equiv
  auto* equiv_cmd =
      app.add_subcommand("equiv", "check structural equivalence of a method");
  std::string equiv_a, equiv_b, equiv_method;
  bool equiv_ignore_stamps = false;
  equiv_cmd->add_option("fileA", equiv_a, "first program file")->required();
  equiv_cmd->add_option("fileB", equiv_b, "second program file")->required();
  equiv_cmd->add_option("--method", equiv_method, "method name")->required();
  equiv_cmd->add_flag("--ignore-stamps", equiv_ignore_stamps,
                      "compare nodes and edges only");

  // gentests
  auto* gen_cmd = app.add_subcommand("gentests", "generate a one-operator test program");
  std::string gen_op, gen_out;
  unsigned gen_bits = 32;
  gen_cmd->add_option("--op", gen_op, "operator node kind, e.g. LeftShift")->required();
  gen_cmd->add_option("--bits", gen_bits, "operand width")
      ->check(CLI::IsMember({32, 64}))
      ->required();
  gen_cmd->add_option("--out", gen_out, "output file")->required();

  // difftest
  auto* diff_cmd = app.add_subcommand("difftest", "run embedded tests (and phase checks)");
  std::string diff_file, diff_phases;
  unsigned diff_jobs = 1;
  bool diff_json = false;
  std::uint64_t diff_seed = 0;
  bool diff_seed_set = false;
  diff_cmd->add_option("file", diff_file, "program file")->required();
  diff_cmd->add_option("--phases", diff_phases, "also run the commutation checks");
  diff_cmd->add_option("--jobs", diff_jobs, "worker threads");
  diff_cmd->add_flag("--json", diff_json, "machine-readable report");
  diff_cmd->add_option("--seed", diff_seed, "shuffle execution order")
      ->each([&](const std::string&) { diff_seed_set = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      sonir::Program p = load_program(run_file);
      std::vector<sonir::Value> args;
      for (const std::string& a : run_args) args.push_back(parse_value_arg(a));
      sonir::RunResult r = sonir::run(p, run_method, args);
      if (auto* err = std::get_if<sonir::ExecError>(&r)) {
        std::cerr << "error: " << err->message << "\n";
        return kExitError;
      }
      sonir::Value v = std::get<sonir::Value>(r);
      std::cout << v.to_string() << "\n";
      if (!run_expect.empty() && v != parse_value_arg(run_expect)) {
        std::cerr << "expected " << parse_value_arg(run_expect).to_string() << "\n";
        return kExitTestFail;
      }
      return kExitOk;
    }

    if (*opt_cmd) {
      sonir::Program p = load_program(opt_file);
      auto it = p.methods.find(opt_method);
      if (it == p.methods.end()) throw CliError{"unknown method '" + opt_method + "'"};
      it->second = sonir::run_phases(it->second, parse_phases_arg(opt_phases));
      save_program(opt_out, p);
      return kExitOk;
    }

    if (*equiv_cmd) {
      sonir::Program pa = load_program(equiv_a);
      sonir::Program pb = load_program(equiv_b);
      if (!pa.methods.count(equiv_method) || !pb.methods.count(equiv_method))
        throw CliError{"unknown method '" + equiv_method + "'"};
      auto eq = sonir::structurally_equivalent(pa.methods.at(equiv_method),
                                               pb.methods.at(equiv_method),
                                               equiv_ignore_stamps);
      if (!eq) {
        std::cerr << eq.first_difference << "\n";
        return kExitTestFail;
      }
      return kExitOk;
    }

    if (*gen_cmd) {
      auto kind = sonir::kind_from_name(gen_op);
      if (!kind) throw CliError{"unknown operator '" + gen_op + "'"};
      save_program(gen_out, sonir::gen_op_tests(*kind, gen_bits));
      return kExitOk;
    }

    if (*diff_cmd) {
      sonir::Program p = load_program(diff_file);
      sonir::HarnessOptions options;
      options.jobs = diff_jobs;
      if (diff_seed_set) options.seed = diff_seed;
      sonir::DiffReport report = sonir::run_difftest(p, options);
      if (!diff_phases.empty()) {
        sonir::DiffReport c =
            sonir::run_commutation_test(p, parse_phases_arg(diff_phases), options);
        for (auto& row : c.rows) report.rows.push_back(std::move(row));
        report.sort();
      }
      if (diff_json)
        std::cout << report.to_json().dump(1) << "\n";
      else
        std::cout << report.to_text();
      return report.all_passed() ? kExitOk : kExitTestFail;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
