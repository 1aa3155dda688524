// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

#include "fermient/errors.hpp"

namespace fermient {
namespace {

constexpr std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fold(const std::uint64_t* first, const std::uint64_t* last) noexcept {
  std::uint64_t h = 0x51ed270b27cc6a3fULL;
  for (; first != last; ++first) h = mix(h ^ *first);
  return h;
}

using Perm = std::vector<int>;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

class Labeller {
 public:
  Labeller(const Hypergraph& hg, const CanonicalOptions& opt)
      : D_(hg.D()), edges_(hg.edges()), opt_(opt), codeg_(D_ * D_, 0), incident_(D_) {
    for (std::size_t k = 0; k < edges_.size(); ++k)
      for (Bits a = edges_[k]; a != 0; a &= a - 1) {
        const int u = std::countr_zero(a);
        incident_[u].push_back(static_cast<int>(k));
        for (Bits b = edges_[k]; b != 0; b &= b - 1) {
          const int v = std::countr_zero(b);
          if (u != v) ++codeg_[u * D_ + v];
        }
      }
    sorted_edges_ = edges_;
    std::sort(sorted_edges_.begin(), sorted_edges_.end());
    find_twins();
  }

  CanonicalForm run() {
    std::vector<int> colors(D_, 0);
    std::vector<int> prefix;
    explore(colors, prefix);
    CanonicalForm out;
    out.labelling = best_lab_;
    out.leaves = leaves_;
    out.automorphisms = twins_;
    out.automorphisms.insert(out.automorphisms.end(), found_.begin(), found_.end());
    return out;
  }

  const std::vector<Bits>& best_key() const { return best_key_; }

 private:
  void find_twins() {
    for (int u = 0; u < D_; ++u)
      for (int v = u + 1; v < D_; ++v) {
        if (incident_[u].size() != incident_[v].size()) continue;
        Perm p(D_);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[u], p[v]);
        if (is_automorphism(p)) twins_.push_back(std::move(p));
      }
  }

  bool is_automorphism(const Perm& p) const {
    std::vector<Bits> img = relabel_edges(edges_, p);
    return img == sorted_edges_;
  }

  void refine(std::vector<int>& colors) const {
    int cells = count_cells(colors);
    std::vector<std::uint64_t> eh(edges_.size());
    std::vector<std::pair<int, std::uint64_t>> sig(D_);
    std::vector<std::uint64_t> buf;
    while (cells < D_) {
      for (std::size_t k = 0; k < edges_.size(); ++k) {
        buf.clear();
        for (Bits b = edges_[k]; b != 0; b &= b - 1)
          buf.push_back(static_cast<std::uint64_t>(colors[std::countr_zero(b)]));
        std::sort(buf.begin(), buf.end());
        eh[k] = fold(buf.data(), buf.data() + buf.size());
      }
      for (int v = 0; v < D_; ++v) {
        buf.clear();
        for (int k : incident_[v]) buf.push_back(eh[k]);
        std::sort(buf.begin(), buf.end());
        const std::uint64_t h1 = fold(buf.data(), buf.data() + buf.size());
        buf.clear();
        for (int u = 0; u < D_; ++u)
          if (codeg_[v * D_ + u] != 0)
            buf.push_back((static_cast<std::uint64_t>(colors[u]) << 32) |
                          static_cast<std::uint64_t>(codeg_[v * D_ + u]));
        std::sort(buf.begin(), buf.end());
        sig[v] = {colors[v], mix(h1 ^ fold(buf.data(), buf.data() + buf.size()))};
      }
      std::vector<std::pair<int, std::uint64_t>> order = sig;
      std::sort(order.begin(), order.end());
      for (int v = 0; v < D_; ++v)
        colors[v] = static_cast<int>(std::lower_bound(order.begin(), order.end(), sig[v]) -
                                     order.begin());
      const int next = count_cells(colors);
      if (next == cells) break;
      cells = next;
    }
  }

  int count_cells(const std::vector<int>& colors) const {
    std::vector<char> seen(D_, 0);
    int n = 0;
    for (int c : colors)
      if (!seen[c]) {
        seen[c] = 1;
        ++n;
      }
    return n;
  }

  void leaf(const std::vector<int>& colors) {
    if (++leaves_ > opt_.max_leaves)
      throw ResourceExhausted("canonical labelling exceeded " +
                              std::to_string(opt_.max_leaves) + " leaves");
    std::vector<Bits> key = relabel_edges(edges_, colors);
    if (best_lab_.empty()) {
      best_key_ = first_key_ = std::move(key);
      best_lab_ = first_lab_ = colors;
      return;
    }
    auto record = [&](const Perm& ref) {
      if (found_.size() >= opt_.max_generators) return;
      Perm inv(D_);
      for (int v = 0; v < D_; ++v) inv[ref[v]] = v;
      Perm sigma(D_);
      bool identity = true;
      for (int v = 0; v < D_; ++v) {
        sigma[v] = inv[colors[v]];
        identity = identity && sigma[v] == v;
      }
      if (!identity) found_.push_back(std::move(sigma));
    };
    if (key == first_key_) {
      record(first_lab_);
    } else if (key == best_key_) {
      record(best_lab_);
    } else if (key < best_key_) {
      best_key_ = std::move(key);
      best_lab_ = colors;
    }
  }

  bool fixes(const Perm& p, const std::vector<int>& prefix) const {
    for (int v : prefix)
      if (p[v] != v) return false;
    return true;
  }

  void explore(std::vector<int>& colors, std::vector<int>& prefix) {
    refine(colors);
    int target = -1;
    {
      std::vector<int> size(D_, 0);
      for (int c : colors) ++size[c];
      for (int c = 0; c < D_; ++c)
        if (size[c] > 1) {
          target = c;
          break;
        }
    }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<int> explored;
    for (int v = 0; v < D_; ++v) {
      if (colors[v] != target) continue;
      if (!explored.empty()) {
        UnionFind uf(D_);
        auto absorb = [&](const std::vector<Perm>& gens) {
          for (const Perm& g : gens)
            if (fixes(g, prefix))
              for (int x = 0; x < D_; ++x) uf.unite(x, g[x]);
        };
        absorb(twins_);
        absorb(found_);
        const int root = uf.find(v);
        if (std::any_of(explored.begin(), explored.end(),
                        [&](int u) { return uf.find(u) == root; }))
          continue;
      }
      explored.push_back(v);
      std::vector<int> child = colors;
      for (int u = 0; u < D_; ++u)
        if (u != v && child[u] == target) child[u] = target + 1;
      prefix.push_back(v);
      explore(child, prefix);
      prefix.pop_back();
    }
  }

  int D_;
  const std::vector<Bits>& edges_;
  CanonicalOptions opt_;
  std::vector<int> codeg_;
  std::vector<std::vector<int>> incident_;
  std::vector<Bits> sorted_edges_;
  std::vector<Perm> twins_;
  std::vector<Perm> found_;
  std::vector<Bits> first_key_, best_key_;
  Perm first_lab_, best_lab_;
  std::uint64_t leaves_ = 0;
};

std::string encode_key(int D, int N, const std::vector<Bits>& edges) {
  const int bytes = (D + 7) / 8;
  std::string key;
  key.reserve(2 + edges.size() * bytes);
  key.push_back(static_cast<char>(D));
  key.push_back(static_cast<char>(N));
  for (Bits e : edges)
    for (int i = bytes - 1; i >= 0; --i) key.push_back(static_cast<char>((e >> (8 * i)) & 0xff));
  return key;
}

}  // namespace

std::vector<Bits> relabel_edges(const std::vector<Bits>& edges,
                                const std::vector<int>& labelling) {
  std::vector<Bits> out;
  out.reserve(edges.size());
  for (Bits e : edges) {
    Bits r = 0;
    for (Bits b = e; b != 0; b &= b - 1) r |= Bits{1} << labelling[std::countr_zero(b)];
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CanonicalForm canonical_labelling(const Hypergraph& hg, const CanonicalOptions& options) {
  if (hg.D() == 0) {
    CanonicalForm out;
    out.key = encode_key(0, hg.N(), hg.edges());
    return out;
  }
  Labeller lab(hg, options);
  CanonicalForm out = lab.run();
  out.key = encode_key(hg.D(), hg.N(), lab.best_key());
  return out;
}

std::string canonical_form(const Hypergraph& hg, const CanonicalOptions& options) {
  return canonical_labelling(hg, options).key;
}

}  // namespace fermient
