#ifndef SHIFTALG_CONFIG_HPP
#define SHIFTALG_CONFIG_HPP

#include <optional>

#include "shiftalg/bridges.hpp"
#include "shiftalg/conjugacy.hpp"

namespace shiftalg {

struct WorkbenchConfig {
  SubshiftPtr subshift;
  std::optional<Graph> graph;            // retained for lpa commands
  std::optional<Ultragraph> ultragraph;  // retained for lpa commands
  SubshiftPtr target;                    // conjugacy commands
  std::optional<BlockCode> code;
  RingTag ring{RingTag::Z, 0};
  std::size_t depth = 3;
  std::size_t window = 5;
  std::size_t budget = 64;
};

WorkbenchConfig load_config_file(const std::string& path);
WorkbenchConfig load_config_text(const std::string& text);

}  // namespace shiftalg

#endif
