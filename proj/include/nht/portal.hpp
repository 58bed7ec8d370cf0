#pragma once

#include <nht/circulant.hpp>
#include <nht/families.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nht {

/// A user of the shared channel, keyed by shift^shift(base), optionally
/// multiplied by a personal nonzero scaling.
struct PortalUser {
  std::string label;
  std::size_t shift;
  std::optional<u64> weight;
};

struct Packet {
  u64 payload;
  std::string recipient;
};

struct ChannelFrame {
  ResidueVector superposition;
};

inline ChannelFrame superpose(const ChannelFrame& x, const ChannelFrame& y) {
  const auto& u = x.superposition;
  const auto& v = y.superposition;
  if (u.modulus() != v.modulus() || u.size() != v.size()) throw std::invalid_argument("superpose: incompatible frames");
  std::vector<u64> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u.modulus().add(u[i], v[i]);
  return {ResidueVector(u.modulus(), std::move(out))};
}

/// Immutable set of users sharing one orthogonal generator.
class PortalNetwork {
 public:
  PortalNetwork(Generator base, std::vector<PortalUser> users) : base_(std::move(base)), users_(std::move(users)) {
    if (base_.p() == 2) throw std::invalid_argument("portal network needs an odd prime modulus");
    k_ = detail::require_orthogonal(base_);
    std::set<std::size_t> shifts;
    std::set<std::string> labels;
    for (auto& u : users_) {
      if (u.shift >= base_.order())
        throw std::invalid_argument("user " + u.label + ": shift " + std::to_string(u.shift) + " out of range");
      if (!shifts.insert(u.shift).second) throw std::invalid_argument("duplicate user shift " + std::to_string(u.shift));
      if (!labels.insert(u.label).second) throw std::invalid_argument("duplicate user label " + u.label);
      if (u.weight) {
        *u.weight = base_.modulus().reduce(*u.weight);
        if (*u.weight == 0) throw std::invalid_argument("user " + u.label + ": zero key scaling");
      }
    }
  }

  const Generator& base() const { return base_; }
  PrimeModulus modulus() const { return base_.modulus(); }
  u64 k() const { return k_; }
  const std::vector<PortalUser>& users() const { return users_; }

  const PortalUser& user(const std::string& label) const {
    for (const auto& u : users_)
      if (u.label == label) return u;
    throw std::invalid_argument("unknown user " + label);
  }

  /// shift^j(base), times the user's personal scaling when set.
  ResidueVector key(const PortalUser& u) const {
    auto g = shift(base_, static_cast<std::int64_t>(u.shift));
    return u.weight ? scale(g, *u.weight).entries() : g.entries();
  }
  ResidueVector key(const std::string& label) const { return key(user(label)); }

  /// Self-correlation of a user's key: k w^2.
  u64 effective_k(const PortalUser& u) const {
    const auto m = modulus();
    const u64 w = u.weight.value_or(1);
    return m.mul(k_, m.mul(w, w));
  }

  /// Replaces one user's personal scaling.
  PortalNetwork rekeyed(const std::string& label, u64 weight) const {
    user(label);
    auto users = users_;
    for (auto& u : users)
      if (u.label == label) u.weight = weight;
    return PortalNetwork(base_, std::move(users));
  }

 private:
  Generator base_;
  std::vector<PortalUser> users_;
  u64 k_ = 0;
};

inline ResidueVector encode(const PortalNetwork& net, const Packet& pkt) {
  const auto key = net.key(pkt.recipient);
  const auto m = net.modulus();
  const u64 payload = m.reduce(pkt.payload);
  std::vector<u64> out(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) out[i] = m.mul(payload, key[i]);
  return {m, std::move(out)};
}

/// Mod-p sum of all encodings; at most one packet per recipient.
inline ChannelFrame transmit(const PortalNetwork& net, const std::vector<Packet>& packets) {
  ChannelFrame frame{ResidueVector::zeros(net.modulus(), net.base().order())};
  std::set<std::string> seen;
  for (const auto& pkt : packets) {
    if (!seen.insert(pkt.recipient).second)
      throw std::invalid_argument("duplicate recipient " + pkt.recipient + " in one frame");
    frame = superpose(frame, ChannelFrame{encode(net, pkt)});
  }
  return frame;
}

/// Despreads with the user's key: (k w^2)^{-1} dot(frame, key).
inline Residue receive(const PortalNetwork& net, const ChannelFrame& frame, const std::string& label) {
  const auto& u = net.user(label);
  const auto m = net.modulus();
  const u64 raw = dot(frame.superposition, net.key(u)).value();
  return Residue(m.mul(raw, m.inv(net.effective_k(u))), m);
}

namespace detail {
inline void require_native(const PortalNetwork& net, const GroupCode& gc) {
  if (gc.base != net.base()) throw std::invalid_argument("group code was built on a different generator");
}
}  // namespace detail

inline ChannelFrame broadcast_group(const PortalNetwork& net, const GroupCode& gc, u64 payload) {
  detail::require_native(net, gc);
  const auto m = net.modulus();
  const u64 x = m.reduce(payload);
  std::vector<u64> out(gc.code.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m.mul(x, gc.code[i]);
  return {ResidueVector(m, std::move(out))};
}

/// A member whose shift carries weight w_j in the code divides by its own
/// k w w_j, so every member recovers the broadcast payload. Non-members
/// despread as in receive and see 0 from the group component.
inline Residue group_receive(const PortalNetwork& net, const ChannelFrame& frame, const GroupCode& gc,
                             const std::string& label) {
  detail::require_native(net, gc);
  const auto& u = net.user(label);
  const auto member_weight = gc.weight_for(u.shift);
  if (!member_weight) return receive(net, frame, label);
  const auto m = net.modulus();
  const u64 raw = dot(frame.superposition, net.key(u)).value();
  const u64 norm = m.mul(m.mul(net.k(), u.weight.value_or(1)), *member_weight);
  return Residue(m.mul(raw, m.inv(norm)), m);
}

/// N^T-based descrambling of an N-scrambled block; returns the recovered block.
inline ResidueVector block_transport(const PortalNetwork& net, const ResidueVector& block) {
  return nht_inverse(nht_transform(block, net.base()), net.base());
}

}  // namespace nht
