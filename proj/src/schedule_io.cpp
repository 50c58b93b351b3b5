#include "meshbcast/schedule_io.hpp"

#include <algorithm>

#include "json.hpp"
#include "meshbcast/rng.hpp"

namespace meshbcast {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

int ss_phase_len_for(int n) { return std::max(1, ceil_log2(n)) + 1; }

json tree_to_json(const Sgst& sgst) {
  const int n = static_cast<int>(sgst.tree.parent.size());
  json t;
  t["parent"] = sgst.tree.parent;
  t["layer"] = sgst.layering.layer_of;
  t["rank2"] = sgst.tree.rank2;
  t["rankx"] = sgst.tree.rankx;
  std::vector<std::string> classes(n);
  for (int v = 0; v < n; ++v) classes[v] = node_class_name(sgst.class_of[v]);
  t["class"] = classes;
  return t;
}

json faultless_slots_json(const Sgst& sgst, const FaultlessSlots& slots) {
  const int n = static_cast<int>(sgst.tree.parent.size());
  const int fast_mod = 9 * slots.rmax2;
  const int slow_mod = 9 * slots.slow_period;
  json all = json::array();
  for (int v = 0; v < n; ++v) {
    json node_slots = json::array();
    if (slots.fast_residue[v] >= 0) {
      node_slots.push_back(
          {{"kind", "fast"}, {"modulus", fast_mod}, {"residue", slots.fast_residue[v]}});
    }
    int layer = sgst.layering.layer_of[v];
    int r0_slow = first_slot_round(layer, 3);
    for (int sigma : slots.slow_sigmas[v]) {
      node_slots.push_back({{"kind", "slow"},
                            {"modulus", slow_mod},
                            {"residue", (r0_slow + 9 * sigma) % slow_mod}});
    }
    node_slots.push_back({{"first_round", first_slot_round(layer, 6)},
                          {"kind", "superslow"},
                          {"modulus", 9},
                          {"phase_len", slots.ss_phase_len},
                          {"residue", (layer + 6) % 9}});
    all.push_back(std::move(node_slots));
  }
  return all;
}

json robust_blocks_json(const Sgst& sgst, int block_size) {
  Supernodes sn = contract_supernodes(sgst, block_size);
  const int modulus = 9 * sgst.tree.rmax2;
  json all = json::array();
  for (std::size_t b = 0; b < sn.members.size(); ++b) {
    all.push_back({{"level", sn.level[b]},
                   {"members", sn.members[b]},
                   {"rank2", sn.rank_j[b]},
                   {"residue", (sn.level[b] + 9 * sn.rank_j[b]) % modulus}});
  }
  return all;
}

[[noreturn]] void fail(const std::string& what) { throw ScheduleError(what); }

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("schedule: missing field '") + key + "'");
  return *it;
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer()) fail(std::string("schedule: field '") + key + "' must be an integer");
  return v.get<int>();
}

std::vector<int> need_int_array(const json& j, const char* key, int n) {
  const json& v = need(j, key);
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    fail(std::string("schedule: field '") + key + "' must be an array of length " +
         std::to_string(n));
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    if (!v[i].is_number_integer())
      fail(std::string("schedule: field '") + key + "' must contain integers");
    out[i] = v[i].get<int>();
  }
  return out;
}

}  // namespace

ScheduleDocument make_schedule_document(const MeshGraph& g, const Sgst& sgst,
                                        const std::string& protocol,
                                        const SimConfig& cfg) {
  ScheduleDocument doc;
  doc.sgst = sgst;
  if (protocol == "faultless") {
    doc.protocol = "faultless";
    doc.slots = build_faultless_slots(g, sgst);
  } else if (protocol == "robust" || protocol == "multi") {
    doc.protocol = "robust";
    doc.block_size = default_block_size(g.n);
    doc.c_mult = std::max(1, cfg.c_mult);
  } else {
    fail("schedule: protocol '" + protocol + "' has no deterministic slot table");
  }
  return doc;
}

std::string render_schedule(const ScheduleDocument& doc) {
  const int n = static_cast<int>(doc.sgst.tree.parent.size());
  json j;
  j["format"] = "meshbcast-schedule";
  j["version"] = kFormatVersion;
  j["protocol"] = doc.protocol;
  j["n"] = n;
  j["x"] = doc.sgst.x;
  j["source"] = doc.sgst.source;
  j["tree"] = tree_to_json(doc.sgst);
  if (doc.protocol == "faultless") {
    j["params"] = {{"modulus", 9 * doc.slots.rmax2},
                   {"rmax2", doc.slots.rmax2},
                   {"slow_index", doc.slots.slow_index},
                   {"slow_period", doc.slots.slow_period},
                   {"ss_phase_len", doc.slots.ss_phase_len}};
    j["slots"] = faultless_slots_json(doc.sgst, doc.slots);
  } else {
    j["params"] = {{"block_size", doc.block_size},
                   {"c_mult", doc.c_mult},
                   {"modulus", 9 * doc.sgst.tree.rmax2},
                   {"slow_phase_len", std::max(1, ceil_log2(std::max(2, doc.sgst.x))) + 1},
                   {"ss_phase_len", ss_phase_len_for(n)},
                   {"superround_len", doc.c_mult * doc.block_size}};
    j["blocks"] = robust_blocks_json(doc.sgst, doc.block_size);
  }
  return j.dump(2) + "\n";
}

ScheduleDocument parse_schedule(const std::string& text, const MeshGraph& g) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("schedule: invalid json: ") + e.what());
  }
  if (!j.is_object()) fail("schedule: top level must be an object");
  if (need(j, "format").get<std::string>() != "meshbcast-schedule")
    fail("schedule: unrecognized format tag");
  if (need_int(j, "version") != kFormatVersion) fail("schedule: unsupported version");

  ScheduleDocument doc;
  doc.protocol = need(j, "protocol").get<std::string>();
  if (doc.protocol != "faultless" && doc.protocol != "robust")
    fail("schedule: unknown protocol '" + doc.protocol + "'");

  const int n = need_int(j, "n");
  if (n != g.n) fail("schedule: node count does not match the graph");
  const int x = need_int(j, "x");
  if (x < 2) fail("schedule: x must be at least 2");
  const int source = need_int(j, "source");
  if (source < 0 || source >= n) fail("schedule: source out of range");

  const json& t = need(j, "tree");
  std::vector<int> parent = need_int_array(t, "parent", n);
  std::vector<int> layer = need_int_array(t, "layer", n);
  std::vector<int> rank2 = need_int_array(t, "rank2", n);
  std::vector<int> rankx = need_int_array(t, "rankx", n);
  const json& cls = need(t, "class");
  if (!cls.is_array() || static_cast<int>(cls.size()) != n)
    fail("schedule: field 'class' must be an array of length " + std::to_string(n));

  RankedTree rt;
  try {
    rt = rank_tree(parent, x);
  } catch (const std::invalid_argument& e) {
    fail(std::string("schedule: bad tree: ") + e.what());
  }
  if (rt.root != source) fail("schedule: tree root does not match source");
  if (rt.rank2 != rank2 || rt.rankx != rankx)
    fail("schedule: stored ranks do not match the tree");

  BfsLayering lay = bfs_layering(g, source);
  if (lay.layer_of != layer) fail("schedule: stored layers do not match BFS from source");
  for (int v = 0; v < n; ++v) {
    if (v == source) continue;
    if (!g.has_edge(v, parent[v])) fail("schedule: tree edge missing from graph");
    if (layer[v] != layer[parent[v]] + 1)
      fail("schedule: tree edge does not climb exactly one layer");
  }

  std::vector<NodeClass> class_of = classify(rt);
  for (int v = 0; v < n; ++v) {
    if (!cls[v].is_string() || cls[v].get<std::string>() != node_class_name(class_of[v]))
      fail("schedule: stored classes do not match the tree");
  }

  doc.sgst.source = source;
  doc.sgst.x = x;
  doc.sgst.layering = std::move(lay);
  doc.sgst.tree = std::move(rt);
  doc.sgst.class_of = std::move(class_of);
  doc.sgst.fast_child.assign(n, -1);
  doc.sgst.slow_children.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (v == source) continue;
    if (doc.sgst.class_of[v] == NodeClass::Fast) doc.sgst.fast_child[parent[v]] = v;
    if (doc.sgst.class_of[v] == NodeClass::Slow)
      doc.sgst.slow_children[parent[v]].push_back(v);
  }

  const json& params = need(j, "params");
  if (doc.protocol == "faultless") {
    FaultlessSlots& slots = doc.slots;
    slots.rmax2 = need_int(params, "rmax2");
    if (slots.rmax2 != doc.sgst.tree.rmax2) fail("schedule: rmax2 does not match the tree");
    if (need_int(params, "modulus") != 9 * slots.rmax2)
      fail("schedule: modulus must be 9 * rmax2");
    slots.slow_period = need_int(params, "slow_period");
    if (slots.slow_period < x) fail("schedule: slow_period must be at least x");
    slots.ss_phase_len = need_int(params, "ss_phase_len");
    if (slots.ss_phase_len != ss_phase_len_for(n))
      fail("schedule: ss_phase_len does not match the node count");
    slots.slow_index = need_int_array(params, "slow_index", n);

    slots.fast_residue.assign(n, -1);
    slots.slow_sigmas.assign(n, {});
    for (int v = 0; v < n; ++v) {
      bool is_slow = doc.sgst.class_of[v] == NodeClass::Slow;
      if (!is_slow && slots.slow_index[v] != -1)
        fail("schedule: slow_index set on a non-slow node");
      if (is_slow && (slots.slow_index[v] < 0 || slots.slow_index[v] >= slots.slow_period))
        fail("schedule: slow_index out of range");
      if (doc.sgst.fast_child[v] >= 0)
        slots.fast_residue[v] =
            (layer[v] + 9 * doc.sgst.tree.rank2[v]) % (9 * slots.rmax2);
      for (int c : doc.sgst.slow_children[v]) slots.slow_sigmas[v].push_back(slots.slow_index[c]);
      std::sort(slots.slow_sigmas[v].begin(), slots.slow_sigmas[v].end());
      slots.slow_sigmas[v].erase(
          std::unique(slots.slow_sigmas[v].begin(), slots.slow_sigmas[v].end()),
          slots.slow_sigmas[v].end());
    }

    // Conflicting same-layer slow nodes must sit in distinct occurrences or
    // the schedule loses their dedicated receptions.
    for (int w = 0; w < n; ++w) {
      if (doc.sgst.class_of[w] != NodeClass::Slow) continue;
      for (int c : g.adj[parent[w]]) {
        if (c == w || doc.sgst.class_of[c] != NodeClass::Slow) continue;
        if (layer[c] == layer[w] && slots.slow_index[c] == slots.slow_index[w])
          fail("schedule: conflicting slow nodes share an occurrence index");
      }
    }
  } else {
    doc.block_size = need_int(params, "block_size");
    if (doc.block_size < 1) fail("schedule: block_size must be positive");
    doc.c_mult = need_int(params, "c_mult");
    if (doc.c_mult < 1) fail("schedule: c_mult must be positive");
    if (need_int(params, "modulus") != 9 * doc.sgst.tree.rmax2)
      fail("schedule: modulus must be 9 * rmax2");
    if (need_int(params, "slow_phase_len") != std::max(1, ceil_log2(std::max(2, x))) + 1)
      fail("schedule: slow_phase_len does not match x");
    if (need_int(params, "ss_phase_len") != ss_phase_len_for(n))
      fail("schedule: ss_phase_len does not match the node count");
    if (need_int(params, "superround_len") != doc.c_mult * doc.block_size)
      fail("schedule: superround_len must be c_mult * block_size");
  }
  return doc;
}

}  // namespace meshbcast
