#pragma once

#include "finseer/nnet.hpp"
#include "finseer/normalize.hpp"

#include <filesystem>
#include <string>
#include <variant>

namespace finseer {

// A trained network together with the normalizer it was trained under.
struct Model {
    std::variant<MlpNetwork, TdrnnNetwork> network;
    Normalizer normalizer;

    bool is_tdrnn() const { return std::holds_alternative<TdrnnNetwork>(network); }
    const char* arch() const { return is_tdrnn() ? "tdrnn" : "mlp"; }
};

// Plain-text model format, version tagged:
//   FINSEER-MODEL v1
//   mlp 5 10 1                      | tdrnn <D> <C> <core sizes...>
//   range <lo> <hi>
//   feature <name> <min> <max>      (one line per feature)
//   layer <l> <units> <inputs>
//   <weight row per unit>
//   bias <unit biases>
//   context <C values>              (tdrnn only)
// All numbers are printed with 17 significant digits; serialize/parse
// round-trips bit-exactly.
std::string serialize_model(const Model& model);

// Throws ParseError naming the offending line.
Model parse_model(const std::string& text);

// save_model writes atomically (temp file + rename): no partial model files.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

// Shared atomic text-file writer used for every CLI artifact.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace finseer
