#include "foldkit/cache.hpp"

#include "foldkit/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

namespace foldkit {

namespace {

constexpr char kMagic[4] = {'F', 'K', 'C', 'A'};

class Writer {
public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u64(s.size());
    buf_ += s;
  }
  void vec(const std::vector<std::int64_t>& v) {
    u64(v.size());
    for (auto x : v) i64(x);
  }
  const std::string& bytes() const { return buf_; }

private:
  std::string buf_;
};

class Reader {
public:
  explicit Reader(std::string bytes) : buf_(std::move(bytes)) {}
  bool ok() const { return ok_; }
  bool done() const { return pos_ == buf_.size(); }

  std::uint8_t u8() {
    if (!need(1)) return 0;
    return static_cast<std::uint8_t>(buf_[pos_++]);
  }
  std::uint64_t u64() {
    if (!need(8)) return 0;
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_++])) << (8 * b);
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  std::string str() {
    const auto n = u64();
    if (!need(n)) return {};
    auto s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<std::int64_t> vec() {
    const auto n = u64();
    std::vector<std::int64_t> v;
    if (!need(n * 8)) return v;
    v.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) v.push_back(i64());
    return v;
  }
  std::size_t size() {
    const auto n = u64();
    if (n > buf_.size()) ok_ = false;
    return ok_ ? static_cast<std::size_t>(n) : 0;
  }

private:
  bool need(std::uint64_t n) {
    if (!ok_ || n > buf_.size() - pos_) ok_ = false;
    return ok_;
  }
  std::string buf_;
  std::size_t pos_ = 0;
  bool ok_ = true;
};

std::string form_text(const CartanDatum& c) {
  std::string s;
  for (const auto& row : c.form) s += format_vector(row) + ";";
  return s;
}

void header(Writer& w, const std::string& kind, const CartanDatum& c, const HighestWeight& lambda, const Window& win) {
  for (char ch : kMagic) w.u8(static_cast<std::uint8_t>(ch));
  w.u64(kCacheVersion);
  w.str(kind);
  w.u64(datum_hash(c));
  w.str(form_text(c));
  w.vec(lambda);
  w.str(win.key());
}

bool header_matches(Reader& r, const std::string& kind, const CartanDatum& c, const HighestWeight& lambda,
                    const Window& win) {
  for (char ch : kMagic)
    if (r.u8() != static_cast<std::uint8_t>(ch)) return false;
  if (r.u64() != kCacheVersion) return false;
  if (r.str() != kind) return false;
  if (r.u64() != datum_hash(c)) return false;
  if (r.str() != form_text(c)) return false;
  if (r.vec() != lambda) return false;
  if (r.str() != win.key()) return false;
  return r.ok();
}

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return; // an unwritable cache only costs time
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) return;
  }
  std::filesystem::rename(tmp, p, ec);
}

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<std::filesystem::path> Cache::resolve(const std::optional<std::string>& flag) {
  if (const char* env = std::getenv("FOLDKIT_CACHE"); env && *env) return std::filesystem::path(env);
  if (flag && !flag->empty()) return std::filesystem::path(*flag);
  return std::nullopt;
}

std::filesystem::path Cache::file_for(const std::string& kind, const CartanDatum& c, const HighestWeight& lambda,
                                      const Window& w) const {
  char name[64];
  std::snprintf(name, sizeof name, "%s-%016llx-%016llx.bin", kind.c_str(),
                static_cast<unsigned long long>(datum_hash(c)),
                static_cast<unsigned long long>(fnv(format_vector(lambda) + "|" + w.key())));
  return *dir_ / name;
}

std::optional<MultTable> Cache::load_mult(const CartanDatum& c, const HighestWeight& lambda, const Window& w) const {
  if (!dir_) return std::nullopt;
  auto bytes = read_file(file_for("mult", c, lambda, w));
  if (!bytes) return std::nullopt;
  Reader r(std::move(*bytes));
  if (!header_matches(r, "mult", c, lambda, w)) return std::nullopt;
  MultTable t;
  t.window = w;
  const auto n = r.size();
  for (std::size_t k = 0; k < n && r.ok(); ++k) {
    auto nu = r.vec();
    const auto m = r.i64();
    t.entries.emplace(std::move(nu), m);
  }
  if (!r.ok() || !r.done()) return std::nullopt;
  return t;
}

void Cache::store_mult(const CartanDatum& c, const HighestWeight& lambda, const MultTable& t) const {
  if (!dir_) return;
  Writer w;
  header(w, "mult", c, lambda, t.window);
  w.u64(t.entries.size());
  for (const auto& [nu, m] : t.entries) {
    w.vec(nu);
    w.i64(m);
  }
  write_file(file_for("mult", c, lambda, t.window), w.bytes());
}

std::optional<CrystalGraph> Cache::load_crystal(const CartanDatum& c, const HighestWeight& lambda,
                                                const Window& w) const {
  if (!dir_) return std::nullopt;
  auto bytes = read_file(file_for("crystal", c, lambda, w));
  if (!bytes) return std::nullopt;
  Reader r(std::move(*bytes));
  if (!header_matches(r, "crystal", c, lambda, w)) return std::nullopt;
  const auto rank = c.rank();
  const auto n = r.size();
  std::vector<CrystalNode> nodes;
  std::vector<std::vector<Edge>> edges;
  nodes.reserve(n);
  edges.reserve(n);
  for (std::size_t k = 0; k < n && r.ok(); ++k) {
    CrystalNode node;
    const auto segs = r.size();
    for (std::size_t s = 0; s < segs && r.ok(); ++s) {
      for (std::size_t j = 0; j < rank; ++j) node.path.dirs.push_back(static_cast<std::int32_t>(r.i64()));
      const auto num = r.i64();
      const auto den = r.i64();
      if (den <= 0) return std::nullopt;
      node.path.lengths.emplace_back(num, den);
    }
    node.nu = r.vec();
    node.eps = r.vec();
    node.phi = r.vec();
    const auto parent = r.i64();
    if (parent >= 0) node.parent = static_cast<std::size_t>(parent);
    node.label = static_cast<std::size_t>(r.u64());
    std::vector<Edge> row(rank);
    for (auto& e : row) {
      const auto kind = r.u8();
      if (kind > 2) return std::nullopt;
      e.kind = static_cast<Edge::Kind>(kind);
      e.target = static_cast<std::size_t>(r.u64());
      if (e.kind == Edge::Kind::Node && e.target >= n) return std::nullopt;
    }
    if (node.nu.size() != rank || node.eps.size() != rank || node.phi.size() != rank) return std::nullopt;
    nodes.push_back(std::move(node));
    edges.push_back(std::move(row));
  }
  if (!r.ok() || !r.done()) return std::nullopt;
  try {
    return CrystalGraph(c, lambda, w, std::move(nodes), std::move(edges));
  } catch (const Error&) {
    return std::nullopt;
  }
}

void Cache::store_crystal(const CrystalGraph& g) const {
  if (!dir_) return;
  Writer w;
  header(w, "crystal", g.datum(), g.lambda(), g.window());
  const auto rank = g.datum().rank();
  w.u64(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& node = g.node(k);
    w.u64(node.path.segments());
    for (std::size_t s = 0; s < node.path.segments(); ++s) {
      for (std::size_t j = 0; j < rank; ++j) w.i64(node.path.dirs[s * rank + j]);
      w.i64(node.path.lengths[s].numerator());
      w.i64(node.path.lengths[s].denominator());
    }
    w.vec(node.nu);
    w.vec(node.eps);
    w.vec(node.phi);
    w.i64(node.parent ? static_cast<std::int64_t>(*node.parent) : -1);
    w.u64(node.label);
    for (std::size_t j = 0; j < rank; ++j) {
      const auto e = g.f_edge(k, j);
      w.u8(static_cast<std::uint8_t>(e.kind));
      w.u64(e.target);
    }
  }
  write_file(file_for("crystal", g.datum(), g.lambda(), g.window()), w.bytes());
}

MultProvider Cache::mult_provider() const {
  return [cache = *this](const CartanDatum& c, const HighestWeight& lambda, const Window& w) {
    if (auto hit = cache.load_mult(c, lambda, w)) return *hit;
    auto t = freudenthal(c, lambda, w);
    cache.store_mult(c, lambda, t);
    return t;
  };
}

CrystalProvider Cache::crystal_provider() const {
  return [cache = *this](const CartanDatum& c, const HighestWeight& lambda, const Window& w) {
    if (auto hit = cache.load_crystal(c, lambda, w)) return *hit;
    auto g = generate(c, lambda, w);
    cache.store_crystal(g);
    return g;
  };
}

} // namespace foldkit
