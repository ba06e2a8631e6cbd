#pragma once

#include <filesystem>
#include <string>

#include "des/generator.hpp"

namespace des {

// Line-oriented generator file format:
//
//   GEN <name>
//   STATES <n>
//   INIT <state>              (omitted when n = 0)
//   MARKED <state> ...
//   EVENTS <event> ...
//   CONTROLLABLE <event> ...  (optional; default: odd ids controllable)
//   TRANS
//   <src> <event> <dst>
//   END
//
// '#' starts a comment line. parse(emit(g)) reproduces g exactly.
Generator parse_generator(const std::string& text);
std::string emit_generator(const Generator& g);

Generator load_generator(const std::filesystem::path& path);

// Write-then-rename, so readers never observe a partial file.
void save_generator(const Generator& g, const std::filesystem::path& path);

}  // namespace des
