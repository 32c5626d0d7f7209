#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nwr/game.hpp"

namespace nwr {

struct LoadedGame {
  std::shared_ptr<const GameView> game;
  // The "reduced-from ..." header line, without the keyword, if present.
  std::optional<std::string> provenance;
  bool is_circuit = false;
};

// Explicit format:
//   game explicit
//   players <n>
//   actions <m_1> ... <m_n>
//   <a_1> ... <a_n> : <num>/<den> ... <num>/<den>     (one line per profile)
// Profiles are listed in enumeration order (player 1 varies fastest).
//
// Circuit format:
//   game circuit
//   players <n>
//   actions <m_1> ... <m_n>
//   payoffs <file_1> ... <file_n>
// Relative circuit paths are resolved against `base_dir`.
//
// Either may be preceded by a "reduced-from ..." provenance line and may
// contain '#' comments.
LoadedGame parse_game(std::string_view text, const std::string& source = "",
                      const std::string& base_dir = ".");
LoadedGame load_game(const std::string& path);

std::string serialize_explicit(const ExplicitGame& game,
                               const std::optional<std::string>& provenance = std::nullopt);

std::string serialize_circuit_game(std::span<const int> action_counts,
                                   std::span<const std::string> circuit_paths,
                                   const std::optional<std::string>& provenance = std::nullopt);

// Actions joined by `sep`.
std::string format_profile(std::span<const int> profile, char sep = ' ');

// Reads a whole file; throws ParseError naming the path when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace nwr
