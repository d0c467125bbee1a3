#pragma once

#include <string>

#include "netbn/augment.hpp"

namespace netbn {

// JSON text for a model: matrix, structure, tables, augmentation record.
// Probabilities round-trip exactly.
std::string save_model(const Model& model);

// Throws ParseError on malformed or inconsistent input.
Model load_model(const std::string& text, const std::string& source_name = "<model>");

// File variants. Throw Error when the file cannot be opened or written.
void save_model_file(const Model& model, const std::string& path);
Model load_model_file(const std::string& path);

// Reads a whole file into memory. Throws Error when it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace netbn
