#pragma once

// Binary persistence of combination graphs.
//
// Layout (integers little-endian):
//   "CGDG" u16 version u8 class u16 n u8 palette u32 levels
//   per level: u32 count, then per node: packed colors, u16 marker (0xFFFF: none)
//   per node: u32 edge count, then per edge: label descriptor, u32 target
//     descriptor: u8 kind, u8 k, k * u16 ids,
//                 TreeSegment adds u16 tail and u8 borders,
//                 CycleSegment adds u8 borders (left in bits 0-1, right in bits 2-3)
//   target bitmap, LSB first
//   u8 has_counts, then per node: u32 byte length, big-endian magnitude

#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "planecount/classes.hpp"
#include "planecount/error.hpp"
#include "planecount/framework.hpp"
#include "planecount/state.hpp"
#include "planecount/units.hpp"

namespace planecount {

inline constexpr std::uint16_t kDagVersion = 1;

namespace detail {

class ByteWriter {
 public:
  std::vector<std::uint8_t> bytes;
  void u8(std::uint32_t v) { bytes.push_back(static_cast<std::uint8_t>(v)); }
  void u16(std::uint32_t v) {
    u8(v & 0xFF);
    u8((v >> 8) & 0xFF);
  }
  void u32(std::uint32_t v) {
    u16(v & 0xFFFF);
    u16(v >> 16);
  }
  void raw(const std::uint8_t* p, std::size_t n) { bytes.insert(bytes.end(), p, p + n); }
};

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size) : p_(data), size_(size) {}
  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ == size_; }

  void need(std::size_t n, const char* what) const {
    if (size_ - pos_ < n) throw FormatError(pos_, std::string("truncated ") + what);
  }
  std::uint32_t u8(const char* what) {
    need(1, what);
    return p_[pos_++];
  }
  std::uint32_t u16(const char* what) {
    need(2, what);
    const std::uint32_t v = p_[pos_] | (p_[pos_ + 1] << 8);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    const std::uint32_t v = static_cast<std::uint32_t>(p_[pos_]) | (static_cast<std::uint32_t>(p_[pos_ + 1]) << 8) |
                            (static_cast<std::uint32_t>(p_[pos_ + 2]) << 16) |
                            (static_cast<std::uint32_t>(p_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  const std::uint8_t* take(std::size_t n, const char* what) {
    need(n, what);
    const std::uint8_t* r = p_ + pos_;
    pos_ += n;
    return r;
  }

 private:
  const std::uint8_t* p_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> serialize_dag(const CombinationGraph& g) {
  detail::ByteWriter w;
  w.raw(reinterpret_cast<const std::uint8_t*>("CGDG"), 4);
  w.u16(kDagVersion);
  w.u8(static_cast<std::uint8_t>(g.class_id));
  w.u16(static_cast<std::uint32_t>(g.n));
  w.u8(static_cast<std::uint32_t>(g.palette));
  w.u32(static_cast<std::uint32_t>(g.level_count()));
  const std::size_t key_len = encoded_color_bytes(g.n, g.palette) + 2;
  std::vector<std::uint8_t> key(key_len);
  for (std::size_t k = 0; k < g.level_count(); ++k) {
    w.u32(g.level_begin[k + 1] - g.level_begin[k]);
    for (std::uint32_t v = g.level_begin[k]; v < g.level_begin[k + 1]; ++v) {
      encode_state(g.nodes[v], g.n, g.palette, key.data());
      w.raw(key.data(), key_len);
    }
  }
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    const auto edges = g.out_edges(v);
    w.u32(static_cast<std::uint32_t>(edges.size()));
    for (const Edge& e : edges) {
      const UnitLabel& u = g.labels[e.label];
      w.u8(static_cast<std::uint8_t>(u.kind));
      w.u8(static_cast<std::uint32_t>(u.ids.size()));
      for (int id : u.ids) w.u16(static_cast<std::uint32_t>(id));
      const std::uint32_t borders =
          static_cast<std::uint32_t>(u.border_left) | (static_cast<std::uint32_t>(u.border_right) << 2);
      if (u.kind == UnitKind::TreeSegment) {
        w.u16(static_cast<std::uint32_t>(u.tail));
        w.u8(borders);
      } else if (u.kind == UnitKind::CycleSegment) {
        w.u8(borders);
      }
      w.u32(e.target);
    }
  }
  std::vector<std::uint8_t> bitmap((g.node_count() + 7) / 8, 0);
  for (std::size_t v = 0; v < g.node_count(); ++v)
    if (g.target[v]) bitmap[v / 8] |= static_cast<std::uint8_t>(1U << (v % 8));
  w.raw(bitmap.data(), bitmap.size());
  w.u8(g.has_counts() ? 1 : 0);
  if (g.has_counts()) {
    std::vector<std::uint8_t> mag;
    for (const BigCount& c : g.suffix) {
      mag.clear();
      if (c != 0) boost::multiprecision::export_bits(c, std::back_inserter(mag), 8);
      w.u32(static_cast<std::uint32_t>(mag.size()));
      w.raw(mag.data(), mag.size());
    }
  }
  return std::move(w.bytes);
}

inline CombinationGraph deserialize_dag(const std::vector<std::uint8_t>& bytes) {
  detail::ByteReader r(bytes.data(), bytes.size());
  const std::uint8_t* magic = r.take(4, "magic");
  if (std::string(reinterpret_cast<const char*>(magic), 4) != "CGDG") throw FormatError(0, "bad magic");
  const std::size_t vpos = r.offset();
  if (r.u16("version") != kDagVersion) throw FormatError(vpos, "unsupported version");
  CombinationGraph g;
  const std::size_t cpos = r.offset();
  const std::uint32_t cls = r.u8("class");
  if (cls < 1 || cls > 7) throw FormatError(cpos, "unknown class id");
  g.class_id = static_cast<ClassId>(cls);
  g.n = static_cast<int>(r.u16("n"));
  if (g.n < 1 || g.n > kMaxPoints) throw FormatError(cpos + 1, "point count out of range");
  const std::size_t ppos = r.offset();
  g.palette = static_cast<int>(r.u8("palette"));
  if (g.palette != class_palette(g.class_id)) throw FormatError(ppos, "palette does not match class");
  const std::uint32_t levels = r.u32("level count");
  const std::size_t key_len = encoded_color_bytes(g.n, g.palette) + 2;
  g.level_begin.push_back(0);
  for (std::uint32_t k = 0; k < levels; ++k) {
    const std::uint32_t count = r.u32("level size");
    r.need(static_cast<std::size_t>(count) * key_len, "node section");
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::size_t at = r.offset();
      State s = decode_state(r.take(key_len, "node"), g.n, g.palette);
      for (int c = 0; c < g.n; ++c)
        if (s.color(c) >= g.palette) throw FormatError(at, "color out of palette");
      if (s.marker >= g.n || s.marker < -1) throw FormatError(at, "marker out of range");
      g.nodes.push_back(s);
    }
    g.level_begin.push_back(static_cast<std::uint32_t>(g.nodes.size()));
  }
  std::map<UnitLabel, std::uint32_t> intern;
  g.edge_begin.push_back(0);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    const std::uint32_t count = r.u32("edge count");
    for (std::uint32_t i = 0; i < count; ++i) {
      UnitLabel u;
      const std::size_t kpos = r.offset();
      const std::uint32_t kind = r.u8("label kind");
      if (kind > 5) throw FormatError(kpos, "unknown label kind");
      u.kind = static_cast<UnitKind>(kind);
      const std::uint32_t k = r.u8("label size");
      if (k == 0) throw FormatError(kpos + 1, "empty label");
      for (std::uint32_t j = 0; j < k; ++j) {
        const std::size_t ipos = r.offset();
        const std::uint32_t id = r.u16("label id");
        if (id >= static_cast<std::uint32_t>(g.n)) throw FormatError(ipos, "label id out of range");
        u.ids.push_back(static_cast<int>(id));
      }
      if (u.kind == UnitKind::TreeSegment) u.tail = static_cast<int>(r.u16("tail"));
      if (u.kind == UnitKind::TreeSegment || u.kind == UnitKind::CycleSegment) {
        const std::size_t bpos = r.offset();
        const std::uint32_t b = r.u8("borders");
        if ((b & 3) > 2 || ((b >> 2) & 3) > 2 || (b >> 4)) throw FormatError(bpos, "bad border code");
        u.border_left = static_cast<Border>(b & 3);
        u.border_right = static_cast<Border>((b >> 2) & 3);
      }
      const std::size_t tpos = r.offset();
      const std::uint32_t target = r.u32("edge target");
      if (target >= g.nodes.size() || target <= v) throw FormatError(tpos, "edge target out of range");
      auto [it, fresh] = intern.try_emplace(u, static_cast<std::uint32_t>(g.labels.size()));
      if (fresh) g.labels.push_back(u);
      g.edges.push_back({it->second, target});
    }
    g.edge_begin.push_back(g.edges.size());
  }
  const std::uint8_t* bitmap = r.take((g.nodes.size() + 7) / 8, "target bitmap");
  g.target.resize(g.nodes.size());
  for (std::size_t v = 0; v < g.nodes.size(); ++v) g.target[v] = (bitmap[v / 8] >> (v % 8)) & 1;
  const std::size_t hpos = r.offset();
  const std::uint32_t has = r.u8("count flag");
  if (has > 1) throw FormatError(hpos, "bad count flag");
  if (has) {
    g.suffix.reserve(g.nodes.size());
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
      const std::uint32_t len = r.u32("count length");
      const std::uint8_t* p = r.take(len, "count bytes");
      BigCount c = 0;
      if (len) boost::multiprecision::import_bits(c, p, p + len, 8);
      g.suffix.push_back(std::move(c));
    }
  }
  if (!r.at_end()) throw FormatError(r.offset(), "trailing bytes");
  return g;
}

inline void save_dag(const CombinationGraph& g, const std::string& path) {
  const auto bytes = serialize_dag(g);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error("write to " + path + " failed");
}

inline CombinationGraph load_dag(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return deserialize_dag(bytes);
}

}  // namespace planecount
