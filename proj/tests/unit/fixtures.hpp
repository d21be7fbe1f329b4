#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wdnlip/flow_box.hpp"
#include "wdnlip/inp_parser.hpp"
#include "wdnlip/network.hpp"
#include "wdnlip/report.hpp"

namespace fixtures {

inline std::filesystem::path network_dir() { return std::filesystem::path(WDNLIP_DATA_DIR) / "networks"; }

inline std::vector<wdnlip::FixtureEntry> all() { return wdnlip::load_fixture_list(network_dir()); }

struct Loaded {
  std::string name;
  wdnlip::NetworkDescription desc;
  wdnlip::Network net;
  wdnlip::FlowBox box;
  double gap;
};

inline Loaded load(const wdnlip::FixtureEntry& e) {
  auto desc = wdnlip::parse_inp_file(e.inp);
  wdnlip::Network net(desc);
  auto box = wdnlip::load_bounds(e.bounds, net);
  return {e.name, std::move(desc), std::move(net), std::move(box), e.gap};
}

inline Loaded load(const std::string& name) {
  for (const auto& e : all()) {
    if (e.name == name) return load(e);
  }
  throw std::runtime_error("no fixture " + name);
}

}  // namespace fixtures
