#include "tpn/benchmark.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace tpn {
namespace {

std::string sup(unsigned i, const char* rest) { return "s" + std::to_string(i) + "_" + rest; }

std::string so_label(unsigned i) { return "SO_BAZ_S" + std::to_string(i); }
std::string ack_label(unsigned i) { return "ACK_S" + std::to_string(i) + "_BAZ_SO"; }
std::string req_label(unsigned i) { return "MOD_S" + std::to_string(i) + "_BAZ"; }
std::string grant_label(unsigned i) { return "MOD_BAZ_S" + std::to_string(i); }
std::string pok_label(unsigned i) { return "POK" + std::to_string(i); }

void check(const ChainConfig& cfg) {
  if (cfg.suppliers == 0) throw std::invalid_argument("need at least one supplier");
  if (cfg.managers == 0) throw std::invalid_argument("need at least one manager");
  if (cfg.grant_upper < Rat(2)) throw std::invalid_argument("grant upper bound must be >= 2");
  if (cfg.deadline.is_negative()) throw std::invalid_argument("deadline must be >= 0");
}

}  // namespace

Ptpn gen_supplier(unsigned i) {
  NetBuilder b;
  b.name("supplier" + std::to_string(i));
  b.place(sup(i, "waiting"), 1);
  for (const char* p : {"ordered", "inspected", "acked", "produced", "want_mod", "awaiting",
                        "modding", "ready", "delivered", "finished"})
    b.place(sup(i, p), 0);

  auto arc = [&](const char* t, const char* from, const char* to) {
    b.pre(sup(i, t), sup(i, from));
    b.post(sup(i, t), sup(i, to));
  };

  b.transition(sup(i, "order"), so_label(i), TimeInterval{});
  arc("order", "waiting", "ordered");
  b.transition(sup(i, "inspect"), "", TimeInterval::closed(Rat(1), Rat(7)));
  arc("inspect", "ordered", "inspected");
  b.transition(sup(i, "ack"), ack_label(i), TimeInterval::closed(Rat(0), Rat(0)));
  arc("ack", "inspected", "acked");
  b.transition(sup(i, "produce"), "", TimeInterval::closed(Rat(6), Rat(10)));
  arc("produce", "acked", "produced");
  // The mod-or-not choice commits instantly; the request deadline below only
  // starts once the supplier is committed to asking.
  b.transition(sup(i, "ok"), "", TimeInterval::closed(Rat(0), Rat(0)));
  arc("ok", "produced", "ready");
  b.transition(sup(i, "mod"), "", TimeInterval::closed(Rat(0), Rat(0)));
  arc("mod", "produced", "want_mod");
  b.transition(sup(i, "request"), req_label(i), TimeInterval::closed(Rat(0), Rat(1)));
  arc("request", "want_mod", "awaiting");
  b.transition(sup(i, "granted"), grant_label(i), TimeInterval{});
  arc("granted", "awaiting", "modding");
  b.transition(sup(i, "rework"), "", TimeInterval::closed(Rat(6), Rat(10)));
  arc("rework", "modding", "ready");
  b.transition(sup(i, "deliver"), pok_label(i), TimeInterval::closed(Rat(1), Rat(3)));
  arc("deliver", "ready", "delivered");
  b.transition(sup(i, "sync"), "SYNC", TimeInterval{});
  arc("sync", "delivered", "finished");

  return lift_to_ptpn(b.build());
}

Ptpn gen_manager(const ChainConfig& cfg) {
  check(cfg);
  NetBuilder b;
  b.name("manager");
  b.place("m_idle", cfg.managers);
  for (unsigned i = 0; i < cfg.suppliers; ++i) {
    b.place("m_serving_" + std::to_string(i), 0);
    b.place("m_vpend_" + std::to_string(i), 1);
    b.place("m_vdone_" + std::to_string(i), 0);
  }
  b.place("m_closed", 0);

  for (unsigned i = 0; i < cfg.suppliers; ++i) {
    std::string n = std::to_string(i);
    b.transition("m_receive_" + n, req_label(i), TimeInterval{});
    b.pre("m_receive_" + n, "m_idle");
    b.post("m_receive_" + n, "m_serving_" + n);
    b.transition("m_grant_" + n, grant_label(i), TimeInterval::closed(Rat(2), cfg.grant_upper));
    b.pre("m_grant_" + n, "m_serving_" + n);
    b.post("m_grant_" + n, "m_idle");
    // Validation only notes the delivery; it never occupies a manager.
    b.transition("m_validate_" + n, pok_label(i), TimeInterval{});
    b.pre("m_validate_" + n, "m_vpend_" + n);
    b.post("m_validate_" + n, "m_vdone_" + n);
  }
  b.transition("m_close", "SYNC", TimeInterval::closed(Rat(0), Rat(0)));
  for (unsigned i = 0; i < cfg.suppliers; ++i) b.pre("m_close", "m_vdone_" + std::to_string(i));
  b.post("m_close", "m_closed");

  return lift_to_ptpn(b.build());
}

Ptpn gen_factory(const ChainConfig& cfg) {
  check(cfg);
  NetBuilder b;
  b.name("factory");
  for (unsigned i = 0; i < cfg.suppliers; ++i) {
    std::string n = std::to_string(i);
    b.place("f_start_" + n, 1);
    b.place("f_sent_" + n, 0);
    b.place("f_acked_" + n, 0);
    b.place("f_done_" + n, 0);
  }
  b.place("f_complete", 0);

  for (unsigned i = 0; i < cfg.suppliers; ++i) {
    std::string n = std::to_string(i);
    TimeInterval when = (cfg.staggered && i == 1) ? TimeInterval::closed(Rat(50), Rat(100))
                                                  : TimeInterval::closed(Rat(0), Rat(1));
    b.transition("f_so_" + n, so_label(i), when);
    b.pre("f_so_" + n, "f_start_" + n);
    b.post("f_so_" + n, "f_sent_" + n);
    b.transition("f_ack_" + n, ack_label(i), TimeInterval{});
    b.pre("f_ack_" + n, "f_sent_" + n);
    b.post("f_ack_" + n, "f_acked_" + n);
    b.transition("f_gr_" + n, grant_label(i), TimeInterval{});
    b.pre("f_gr_" + n, "f_acked_" + n);
    b.post("f_gr_" + n, "f_done_" + n);
  }
  // Bookkeeping join; only complete when every supplier went through a
  // granted modification.
  b.transition("f_join", "", TimeInterval::closed(Rat(0), Rat(0)));
  for (unsigned i = 0; i < cfg.suppliers; ++i) b.pre("f_join", "f_done_" + std::to_string(i));
  b.post("f_join", "f_complete");

  return lift_to_ptpn(b.build());
}

Ptpn gen_end_of_line(const ChainConfig& cfg) {
  check(cfg);
  NetBuilder b;
  b.name("endofline");
  b.place("e_start", 1);
  b.place("e_waiting", 1);
  b.place("e_synced", 0);
  b.place("e_done", 0);
  b.place("e_accepted", 0);
  b.place("e_timedout", 0);

  b.transition("e_recv", "SYNC", TimeInterval{});
  b.pre("e_recv", "e_start");
  b.post("e_recv", "e_synced");
  b.transition("e_t0", "", TimeInterval::closed(Rat(0), Rat(0)));
  b.pre("e_t0", "e_synced");
  b.pre("e_t0", "e_waiting");
  b.post("e_t0", "e_done");
  b.transition("e_success", "SUCCESS", TimeInterval::closed(Rat(0), Rat(0)));
  b.pre("e_success", "e_done");
  b.post("e_success", "e_accepted");
  b.transition("e_timeout", "TIMEOUT", TimeInterval::closed(cfg.deadline, cfg.deadline));
  b.pre("e_timeout", "e_waiting");
  b.post("e_timeout", "e_timedout");

  return lift_to_ptpn(b.build());
}

std::vector<Ptpn> chain_components(const ChainConfig& cfg) {
  check(cfg);
  std::vector<Ptpn> out;
  out.push_back(gen_manager(cfg));
  out.push_back(gen_factory(cfg));
  for (unsigned i = 0; i < cfg.suppliers; ++i) out.push_back(gen_supplier(i));
  out.push_back(gen_end_of_line(cfg));
  return out;
}

ProductResult build_chain(const ChainConfig& cfg) {
  return chain_product(chain_components(cfg));
}

AcceptanceSpec chain_acceptance() {
  AcceptanceSpec spec;
  spec.success_label = "SUCCESS";
  spec.timeout_label = "TIMEOUT";
  spec.accepting_at_least = {{"e_accepted", 1}};
  return spec;
}

void write_chain(const ChainConfig& cfg, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Manifest m;
  m.base_dir = dir;
  for (const auto& component : chain_components(cfg)) {
    std::string fname = component.net.name + ".net";
    std::ofstream out(dir / fname, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / fname).string());
    out << serialize_net(component);
    m.entries.push_back({fname, SyncPolicy{}});
  }
  std::ofstream out(dir / "chain.manifest", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (dir / "chain.manifest").string());
  out << serialize_manifest(m);
}

}  // namespace tpn
