#include "hugeobj/objects.hpp"

namespace hugeobj {

const char* to_string(AccessKind k) {
  switch (k) {
    case AccessKind::sample: return "sample";
    case AccessKind::support: return "support";
    case AccessKind::entry: return "entry";
  }
  return "?";
}

FunctionSpec GraphSpec::as_function() const {
  FunctionSpec f;
  f.domain = pair_domain();
  f.range = RangeSpec::binary();
  DomainSpec pd = f.domain;
  auto eval = edge_evaluator;
  f.evaluator = [pd, eval](Element e) -> std::uint64_t {
    auto [u, v] = pd.pair_decode(e);
    return eval(u, v) ? 1 : 0;
  };
  f.support_size_hint = edge_count_hint;
  if (edge_sampler) {
    auto es = edge_sampler;
    f.support_sampler = [pd, es](Rng& rng) -> Element {
      auto [u, v] = es(rng);
      return pd.pair_encode(u, v);
    };
  }
  f.name = name + ".adj";
  return f;
}

namespace {

std::shared_ptr<const std::vector<Element>> enumerate_support(
    const DomainSpec& dom, const std::function<std::uint64_t(Element)>& eval) {
  if (dom.cardinality() > kEnumerableMax)
    throw std::invalid_argument(
        "support view: domain too large to enumerate and no support sampler given");
  auto supp = std::make_shared<std::vector<Element>>();
  for (Element x = 0; x < dom.cardinality(); ++x)
    if (eval(x)) supp->push_back(x);
  if (supp->empty()) throw std::domain_error("support view: empty support");
  return supp;
}

}  // namespace

AccessView AccessView::induce(FunctionSpec f, AccessKind kind) {
  if (!f.evaluator) throw std::invalid_argument("FunctionSpec: missing evaluator");
  AccessView v;
  v.kind_ = kind;
  v.domain_ = f.domain;
  if (kind == AccessKind::support) {
    if (f.range.kind != RangeSpec::Kind::binary)
      throw std::invalid_argument("support view: function must be binary");
    if (!f.support_sampler) v.support_ = enumerate_support(f.domain, f.evaluator);
  }
  v.source_ = std::move(f);
  return v;
}

AccessView AccessView::induce(GraphSpec g, AccessKind kind) {
  if (!g.edge_evaluator) throw std::invalid_argument("GraphSpec: missing edge evaluator");
  if (kind == AccessKind::entry)
    throw std::invalid_argument("entry view is defined only for functions");
  AccessView v;
  v.kind_ = kind;
  v.domain_ = g.pair_domain();
  if (kind == AccessKind::support && !g.edge_sampler) {
    FunctionSpec adj = g.as_function();
    v.support_ = enumerate_support(adj.domain, adj.evaluator);
  }
  v.source_ = std::move(g);
  return v;
}

Answer AccessView::draw(Rng& rng) const {
  switch (kind_) {
    case AccessKind::sample: {
      Element x = rng.next_below(domain_.cardinality());
      if (is_graph()) {
        auto [u, v] = domain_.pair_decode(x);
        return {x, graph().edge_evaluator(u, v) ? 1ULL : 0ULL};
      }
      return {x, function().evaluator(x)};
    }
    case AccessKind::support: {
      if (support_) return {(*support_)[rng.next_below(support_->size())], 1};
      if (is_graph()) {
        auto [u, v] = graph().edge_sampler(rng);
        if (!graph().edge_evaluator(u, v))
          throw std::logic_error("edge sampler returned a non-edge");
        return {domain_.pair_encode(u, v), 1};
      }
      Element x = function().support_sampler(rng);
      return {x, 1};
    }
    case AccessKind::entry:
      throw std::logic_error("entry views answer entry(x), not draw()");
  }
  throw std::logic_error("unreachable");
}

std::uint64_t AccessView::entry(Element x) const {
  if (kind_ != AccessKind::entry) throw std::logic_error("entry() on a non-entry view");
  return function().evaluator(x);
}

ImplementationHandle to_ordinary(const ImplementationHandle& impl, int security_bits) {
  if (security_bits < 8) throw std::invalid_argument("to_ordinary: security_bits too small");
  ImplementationHandle out;
  out.kind = impl.kind;
  out.domain = impl.domain;
  out.description = impl.description + " [ordinary]";
  out.seed_bytes = static_cast<std::size_t>((security_bits + 7) / 8);
  auto inner_answer = impl.answer;
  auto expand = [](const OracleSeed& seed) {
    return OracleSeed(oracle_stream(seed, Label("ord.expand"), 32), seed.scheme_version());
  };
  out.answer = [inner_answer, expand](const OracleSeed& seed, Rng& rng, Element q) {
    return inner_answer(expand(seed), rng, q);
  };
  if (impl.entry) {
    auto inner_entry = impl.entry;
    out.entry = [inner_entry, expand](const OracleSeed& seed, Element x) {
      return inner_entry(expand(seed), x);
    };
  }
  return out;
}

ObjectSampler ObjectSampler::from_view(const AccessView& view) {
  ObjectSampler s;
  s.kind_ = view.kind();
  s.domain_ = view.domain();
  s.draw_ = [view](Rng& rng) { return view.draw(rng); };
  return s;
}

ObjectSampler ObjectSampler::from_model(const ImplementationHandle& impl) {
  ObjectSampler s;
  s.kind_ = impl.kind;
  s.domain_ = impl.domain;
  s.draw_ = [impl](Rng& rng) {
    OracleSeed seed = impl.fresh_seed(rng);
    return impl.answer(seed, rng, 0);
  };
  return s;
}

ObjectSampler ObjectSampler::from_seeded_object(const ImplementationHandle& impl,
                                                OracleSeed seed) {
  ObjectSampler s;
  s.kind_ = impl.kind;
  s.domain_ = impl.domain;
  s.draw_ = [impl, seed](Rng& rng) { return impl.answer(seed, rng, 0); };
  return s;
}

ObjectSampler ObjectSampler::from_draw(AccessKind kind, DomainSpec domain,
                                       std::function<Answer(Rng&)> draw) {
  ObjectSampler s;
  s.kind_ = kind;
  s.domain_ = std::move(domain);
  s.draw_ = std::move(draw);
  return s;
}

}  // namespace hugeobj
