#include "shpart/stream.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>

namespace shpart {

namespace {

constexpr char kMagic[8] = {'S', 'H', 'P', 'S', 'T', 'R', 'M', '1'};

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class reader {
 public:
  reader(const std::string& data, const std::string& path) : data_(data), path_(path) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }

  void magic() {
    need(8);
    if (std::memcmp(data_.data(), kMagic, 8) != 0)
      throw input_error(path_ + ": not a stream file (bad magic)");
    pos_ += 8;
  }

  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) {
    if (data_.size() - pos_ < n) throw input_error(path_ + ": truncated stream file");
  }

  const std::string& data_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t stream_file::num_pins() const {
  std::uint64_t total = 0;
  for (const auto& e : elements) total += e.nets.size();
  return total;
}

stream_file stream_order(const hypergraph& h, std::uint64_t seed) {
  std::vector<vertex_id> order(h.num_vertices());
  std::iota(order.begin(), order.end(), vertex_id{0});
  if (seed != 0) {
    rng r(seed);
    // Fisher-Yates, high index down.
    for (std::size_t i = order.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(r.next_below(i));
      std::swap(order[i - 1], order[j]);
    }
  }

  stream_file s;
  s.num_nets = h.num_nets();
  s.order_seed = seed;
  s.elements.reserve(order.size());
  for (vertex_id v : order) {
    const auto nets = h.nets_of(v);
    s.elements.push_back({v, {nets.begin(), nets.end()}});
  }
  return s;
}

void save_stream(const stream_file& s, const std::string& path) {
  std::string buf;
  buf.reserve(40 + 8 * s.elements.size() + 4 * s.num_pins());
  buf.append(kMagic, 8);
  put_u64(buf, s.num_vertices());
  put_u64(buf, s.num_nets);
  put_u64(buf, s.num_pins());
  put_u64(buf, s.order_seed);
  for (const auto& e : s.elements) {
    put_u32(buf, e.vertex);
    put_u32(buf, static_cast<std::uint32_t>(e.nets.size()));
    for (net_id n : e.nets) put_u32(buf, n);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot open " + path + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw input_error("write failed: " + path);
}

stream_file load_stream(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  reader r(data, path);
  r.magic();
  const std::uint64_t nv = r.u64();
  const std::uint64_t nn = r.u64();
  const std::uint64_t np = r.u64();
  const std::uint64_t seed = r.u64();
  if (nv > 0xFFFFFFFFull) throw input_error(path + ": vertex count exceeds 32-bit range");
  if (nn > 0xFFFFFFFFull) throw input_error(path + ": net count exceeds 32-bit range");

  stream_file s;
  s.num_nets = nn;
  s.order_seed = seed;
  s.elements.reserve(nv);

  std::vector<bool> covered(nv, false);
  std::vector<bool> net_mark(nn, false);
  std::uint64_t pins = 0;
  for (std::uint64_t i = 0; i < nv; ++i) {
    const std::uint32_t v = r.u32();
    const std::uint32_t deg = r.u32();
    if (v >= nv) throw input_error(path + ": vertex id " + std::to_string(v) + " out of range");
    if (covered[v]) throw input_error(path + ": vertex " + std::to_string(v) + " appears twice");
    covered[v] = true;

    stream_element e;
    e.vertex = v;
    e.nets.resize(deg);
    for (std::uint32_t d = 0; d < deg; ++d) {
      const std::uint32_t n = r.u32();
      if (n >= nn) throw input_error(path + ": net id " + std::to_string(n) + " out of range");
      if (net_mark[n])
        throw input_error(path + ": vertex " + std::to_string(v) + " lists net " +
                          std::to_string(n) + " twice");
      net_mark[n] = true;
      e.nets[d] = n;
    }
    for (net_id n : e.nets) net_mark[n] = false;
    pins += deg;
    s.elements.push_back(std::move(e));
  }
  if (!r.done()) throw input_error(path + ": trailing bytes after last element");
  if (pins != np)
    throw input_error(path + ": pin count mismatch (header " + std::to_string(np) + ", actual " +
                      std::to_string(pins) + ")");
  return s;
}

hypergraph hypergraph_from_stream(const stream_file& s) {
  std::vector<std::vector<net_id>> nets(s.num_vertices());
  for (const auto& e : s.elements) nets[e.vertex] = e.nets;
  return hypergraph::from_net_lists(std::move(nets), s.num_nets);
}

}  // namespace shpart
