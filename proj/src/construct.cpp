#include "trivext/ring.hpp"
#include "trivext/trivial_ext.hpp"

namespace trivext {

RingPtr construct_simple_ring(const RingDescriptor& d, const Config& cfg);  // ring.cpp

RingPtr construct_ring(const RingDescriptor& d, const Config& cfg) {
  if (d.kind == RingDescriptor::Kind::TrivialExt) {
    RingPtr base = construct_ring(d.children[0], cfg);
    ExtModule ext(base, d.mod, cfg);
    auto r = std::make_shared<TrivialExtRing>(d, base, std::move(ext), cfg);
    r->finalize(cfg);
    return r;
  }
  return construct_simple_ring(d, cfg);
}

}  // namespace trivext
