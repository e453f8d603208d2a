// Generates the bundled KDD-format fixture: category proportions follow the
// official 10% distribution, every subcategory appears at least once, and
// every category gets at least two rows. Per-subcategory feature profiles
// follow the well-known signatures of the public dataset (smurf = fixed-size
// icmp echo floods, neptune = SYN floods with serror ~ 1, u2r = interactive
// telnet sessions with root shells, and so on).

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "featsel/dataset.hpp"
#include "featsel/rng.hpp"

namespace {

struct Row {
  double duration = 0;
  std::string protocol = "tcp";
  std::string service = "http";
  std::string flag = "SF";
  double src_bytes = 0, dst_bytes = 0;
  int land = 0, wrong_fragment = 0, urgent = 0, hot = 0;
  int num_failed_logins = 0, logged_in = 0, num_compromised = 0;
  int root_shell = 0, su_attempted = 0, num_root = 0;
  int num_file_creations = 0, num_shells = 0, num_access_files = 0;
  int num_outbound_cmds = 0, is_host_login = 0, is_guest_login = 0;
  int count = 1, srv_count = 1;
  double serror_rate = 0, srv_serror_rate = 0, rerror_rate = 0,
         srv_rerror_rate = 0;
  double same_srv_rate = 1, diff_srv_rate = 0, srv_diff_host_rate = 0;
  int dst_host_count = 255, dst_host_srv_count = 255;
  double dst_host_same_srv_rate = 1, dst_host_diff_srv_rate = 0,
         dst_host_same_src_port_rate = 0, dst_host_srv_diff_host_rate = 0,
         dst_host_serror_rate = 0, dst_host_srv_serror_rate = 0,
         dst_host_rerror_rate = 0, dst_host_srv_rerror_rate = 0;
  std::string label;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double u01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(featsel::bounded_rand(
                    rng_, static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double normal(double mean, double sd) {
    const double u1 = std::max(u01(), 1e-12);
    const double u2 = u01();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(2.0 * 3.14159265358979323846 * u2);
  }
  // Heavy-tailed positive integer, the shape of byte counters.
  double logn(double log_mean, double log_sd, double cap = 1e9) {
    const double v = std::exp(normal(log_mean, log_sd));
    return std::floor(std::min(v, cap));
  }
  double rate2(double v) {  // two-decimal rate like the public files
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    return std::round(v * 100.0) / 100.0;
  }
  bool chance(double p) { return u01() < p; }
  std::mt19937_64& raw() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

Row normal_row(Gen& g) {
  Row r;
  r.label = "normal";
  const double pick = g.u01();
  if (pick < 0.16) {  // web browsing
    r.service = "http";
    r.duration = g.uniform(0, 4);
    r.src_bytes = g.logn(5.5, 0.5);
    r.dst_bytes = g.logn(7.6, 1.0);
    r.logged_in = 1;
    if (g.chance(0.05)) r.hot = g.uniform(1, 2);
    r.count = g.uniform(1, 20);
    r.srv_count = std::max(1, r.count - g.uniform(0, 3));
    r.dst_host_count = g.uniform(1, 255);
    r.dst_host_srv_count = g.uniform(static_cast<int>(r.dst_host_count * 0.6),
                                     r.dst_host_count);
    r.dst_host_same_srv_rate = g.rate2(0.8 + 0.2 * g.u01());
    r.dst_host_same_src_port_rate = g.rate2(g.u01() * 0.1);
  } else if (pick < 0.22) {  // mail
    r.service = "smtp";
    r.duration = g.uniform(0, 3);
    r.src_bytes = g.logn(6.6, 0.5);
    r.dst_bytes = g.uniform(280, 400);
    r.logged_in = 1;
    r.count = g.uniform(1, 10);
    r.srv_count = r.count;
    r.dst_host_count = g.uniform(30, 255);
    r.dst_host_srv_count = g.uniform(20, 120);
    r.dst_host_same_srv_rate = g.rate2(0.3 + 0.6 * g.u01());
  } else if (pick < 0.24) {  // interactive sessions
    r.service = "telnet";
    r.duration = g.uniform(100, 1200);
    r.src_bytes = g.logn(7.0, 0.8);
    r.dst_bytes = g.logn(8.5, 0.8);
    r.logged_in = 1;
    if (g.chance(0.25)) r.hot = g.uniform(1, 2);
    r.count = 1;
    r.srv_count = 1;
    r.dst_host_count = g.uniform(1, 60);
    r.dst_host_srv_count = g.uniform(1, 20);
    r.dst_host_same_srv_rate = g.rate2(0.5 + 0.5 * g.u01());
  } else if (pick < 0.28) {  // name lookups
    r.protocol = "udp";
    r.service = "domain_u";
    r.duration = 0;
    r.src_bytes = g.uniform(40, 46);
    r.dst_bytes = g.uniform(44, 130);
    r.count = g.uniform(100, 511);
    r.srv_count = r.count - g.uniform(0, 10);
    r.dst_host_count = 255;
    r.dst_host_srv_count = 255;
    r.dst_host_same_src_port_rate = g.rate2(0.95 + 0.05 * g.u01());
  } else if (pick < 0.33) {  // bulk transfer, no login, very spread bytes
    r.service = "ftp_data";
    r.duration = 0;
    r.src_bytes = g.logn(9.0, 2.0);
    r.dst_bytes = 0;
    r.count = g.uniform(1, 6);
    r.srv_count = r.count;
    r.dst_host_count = g.uniform(1, 120);
    r.dst_host_srv_count = g.uniform(1, 60);
    r.dst_host_same_srv_rate = g.rate2(0.2 + 0.8 * g.u01());
    r.dst_host_same_src_port_rate = g.rate2(0.3 + 0.6 * g.u01());
  } else if (pick < 0.72) {  // busy backbone traffic between big hosts
    const double s = g.u01();
    r.service = s < 0.6 ? "other" : (s < 0.85 ? "private" : "finger");
    r.duration = 0;
    r.src_bytes = g.uniform(0, 300);
    r.dst_bytes = g.uniform(0, 300);
    r.count = g.uniform(150, 420);
    r.srv_count = std::max(1, static_cast<int>(r.count * (0.7 + 0.3 * g.u01())));
    r.dst_host_count = g.uniform(245, 255);
    r.dst_host_srv_count = g.uniform(230, 255);
    r.dst_host_same_srv_rate = g.rate2(0.5 + 0.5 * g.u01());
    r.dst_host_same_src_port_rate = g.rate2(g.u01() * 0.4);
  } else {  // unanswered-connection bursts, still labeled normal
    r.service = g.chance(0.6) ? "private" : "other";
    r.flag = "S0";
    r.duration = 0;
    r.src_bytes = 0;
    r.dst_bytes = 0;
    r.count = g.uniform(150, 450);
    r.srv_count = std::max(1, static_cast<int>(r.count * (0.7 + 0.3 * g.u01())));
    r.serror_rate = g.rate2(0.7 + 0.3 * g.u01());
    r.srv_serror_rate = g.rate2(0.7 + 0.3 * g.u01());
    r.dst_host_count = g.uniform(245, 255);
    r.dst_host_srv_count = g.uniform(230, 255);
    r.dst_host_same_srv_rate = g.rate2(0.4 + 0.6 * g.u01());
    r.dst_host_serror_rate = g.rate2(r.serror_rate * (0.6 + 0.4 * g.u01()));
    r.dst_host_srv_serror_rate =
        g.rate2(r.srv_serror_rate * (0.6 + 0.4 * g.u01()));
  }
  if (g.chance(0.02)) r.wrong_fragment = 1;
  if (g.chance(0.05) && r.flag == "SF") r.flag = "RSTO";
  r.same_srv_rate = g.rate2(0.85 + 0.15 * g.u01());
  r.diff_srv_rate = g.rate2(g.u01() * 0.06);
  r.srv_diff_host_rate = g.rate2(g.u01() * 0.06);
  return r;
}

Row smurf_row(Gen& g) {
  Row r;
  r.label = "smurf";
  r.protocol = "icmp";
  r.service = "ecr_i";
  r.src_bytes = g.chance(0.95) ? 1032 : 520;
  r.dst_bytes = 0;
  r.count = g.uniform(350, 511);
  r.srv_count = r.count;
  r.same_srv_rate = 1.0;
  r.dst_host_count = 255;
  r.dst_host_srv_count = 255;
  r.dst_host_same_src_port_rate = 1.0;
  return r;
}

Row neptune_row(Gen& g) {
  Row r;
  r.label = "neptune";
  r.service = g.chance(0.7) ? "private" : "other";
  r.flag = "S0";
  r.count = g.uniform(100, 300);
  r.srv_count = g.uniform(1, 20);
  r.serror_rate = 1.0;
  r.srv_serror_rate = 1.0;
  r.same_srv_rate = g.rate2(0.02 + 0.08 * g.u01());
  r.diff_srv_rate = g.rate2(0.05 + 0.04 * g.u01());
  r.dst_host_count = 255;
  r.dst_host_srv_count = g.uniform(1, 30);
  r.dst_host_same_srv_rate = g.rate2(g.u01() * 0.08);
  r.dst_host_serror_rate = 1.0;
  r.dst_host_srv_serror_rate = 1.0;
  return r;
}

Row back_row(Gen& g) {
  Row r;
  r.label = "back";
  r.service = "http";
  r.duration = 0;
  r.src_bytes = 54540;
  r.dst_bytes = g.uniform(8000, 8400);
  r.logged_in = 1;
  r.count = g.uniform(1, 6);
  r.srv_count = r.count;
  r.dst_host_count = 255;
  r.dst_host_srv_count = 255;
  return r;
}

Row teardrop_row(Gen& g) {
  Row r;
  r.label = "teardrop";
  r.protocol = "udp";
  r.service = "private";
  r.src_bytes = 28;
  r.wrong_fragment = 3;
  r.count = g.uniform(100, 200);
  r.srv_count = r.count;
  r.dst_host_count = 255;
  r.dst_host_srv_count = 255;
  r.dst_host_same_src_port_rate = 1.0;
  return r;
}

Row pod_row(Gen& g) {
  Row r;
  r.label = "pod";
  r.protocol = "icmp";
  r.service = "ecr_i";
  r.src_bytes = 1480;
  r.wrong_fragment = 1;
  r.count = g.uniform(1, 10);
  r.srv_count = r.count;
  r.dst_host_count = g.uniform(100, 255);
  r.dst_host_srv_count = g.uniform(100, 255);
  return r;
}

Row land_row(Gen&) {
  Row r;
  r.label = "land";
  r.service = "finger";
  r.flag = "S0";
  r.land = 1;
  r.count = 1;
  r.srv_count = 1;
  r.serror_rate = 1.0;
  r.srv_serror_rate = 1.0;
  r.dst_host_count = 1;
  r.dst_host_srv_count = 1;
  r.dst_host_serror_rate = 1.0;
  return r;
}

Row satan_row(Gen& g) {
  Row r;
  r.label = "satan";
  r.service = g.chance(0.5) ? "private" : "other";
  r.flag = g.chance(0.6) ? "REJ" : "SF";
  r.count = g.uniform(1, 3);
  r.srv_count = 1;
  r.rerror_rate = g.rate2(0.7 + 0.3 * g.u01());
  r.srv_rerror_rate = r.rerror_rate;
  r.same_srv_rate = g.rate2(g.u01() * 0.3);
  r.diff_srv_rate = g.rate2(0.5 + 0.5 * g.u01());
  r.dst_host_count = 255;
  r.dst_host_srv_count = g.uniform(1, 20);
  r.dst_host_same_srv_rate = g.rate2(g.u01() * 0.1);
  r.dst_host_diff_srv_rate = g.rate2(0.5 + 0.5 * g.u01());
  r.dst_host_rerror_rate = g.rate2(0.6 + 0.4 * g.u01());
  return r;
}

Row ipsweep_row(Gen& g) {
  Row r;
  r.label = "ipsweep";
  r.protocol = "icmp";
  r.service = "eco_i";
  r.src_bytes = g.chance(0.7) ? 8 : 18;
  r.count = g.uniform(1, 5);
  r.srv_count = r.count;
  r.srv_diff_host_rate = g.rate2(0.3 + 0.5 * g.u01());
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  r.dst_host_srv_diff_host_rate = g.rate2(0.4 + 0.6 * g.u01());
  return r;
}

Row portsweep_row(Gen& g) {
  Row r;
  r.label = "portsweep";
  r.service = "private";
  r.flag = g.chance(0.5) ? "REJ" : "S0";
  r.count = g.uniform(1, 3);
  r.srv_count = 1;
  r.serror_rate = r.flag == "S0" ? 1.0 : 0.0;
  r.rerror_rate = r.flag == "REJ" ? 1.0 : 0.0;
  r.diff_srv_rate = g.rate2(0.7 + 0.3 * g.u01());
  r.same_srv_rate = g.rate2(g.u01() * 0.2);
  r.dst_host_count = 255;
  r.dst_host_srv_count = g.uniform(1, 10);
  r.dst_host_same_srv_rate = 0.0;
  r.dst_host_diff_srv_rate = g.rate2(0.7 + 0.3 * g.u01());
  r.dst_host_same_src_port_rate = 1.0;
  r.dst_host_rerror_rate = g.rate2(0.4 + 0.6 * g.u01());
  return r;
}

Row nmap_row(Gen& g) {
  Row r;
  r.label = "nmap";
  r.protocol = "icmp";
  r.service = "eco_i";
  r.src_bytes = 8;
  r.count = g.uniform(1, 2);
  r.srv_count = r.count;
  r.dst_host_count = g.uniform(1, 5);
  r.dst_host_srv_count = g.uniform(1, 5);
  r.dst_host_srv_diff_host_rate = 1.0;
  return r;
}

Row warezclient_row(Gen& g) {
  Row r;
  r.label = "warezclient";
  r.service = g.chance(0.5) ? "ftp" : "ftp_data";
  r.duration = g.uniform(1, 60);
  r.src_bytes = g.uniform(100, 400);
  r.dst_bytes = g.logn(11.0, 0.8);
  r.logged_in = 1;
  r.is_guest_login = 1;
  r.hot = g.uniform(0, 4);
  r.count = g.uniform(1, 4);
  r.srv_count = r.count;
  r.dst_host_count = g.uniform(1, 30);
  r.dst_host_srv_count = g.uniform(1, 30);
  return r;
}

Row guess_passwd_row(Gen& g) {
  Row r;
  r.label = "guess_passwd";
  r.service = "telnet";
  r.flag = "RSTO";
  r.duration = g.uniform(1, 4);
  r.src_bytes = g.uniform(100, 130);
  r.dst_bytes = g.uniform(300, 400);
  r.num_failed_logins = g.uniform(1, 5);
  r.hot = 1;
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 20);
  r.dst_host_srv_count = g.uniform(1, 20);
  return r;
}

Row warezmaster_row(Gen& g) {
  Row r;
  r.label = "warezmaster";
  r.service = "ftp";
  r.duration = g.uniform(1, 30);
  r.src_bytes = g.logn(10.5, 0.5);
  r.dst_bytes = g.uniform(200, 500);
  r.logged_in = 1;
  r.is_guest_login = 1;
  r.hot = 2;
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row imap_row(Gen& g) {
  Row r;
  r.label = "imap";
  r.service = "imap4";
  r.flag = "RSTO";
  r.duration = g.uniform(1, 4);
  r.src_bytes = g.uniform(1000, 1400);
  r.dst_bytes = g.uniform(300, 400);
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row ftp_write_row(Gen& g) {
  Row r;
  r.label = "ftp_write";
  r.service = "ftp";
  r.duration = g.uniform(10, 60);
  r.src_bytes = g.uniform(200, 400);
  r.dst_bytes = g.uniform(200, 500);
  r.logged_in = 1;
  r.is_guest_login = 1;
  r.num_file_creations = 1;
  r.hot = 1;
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row multihop_row(Gen& g) {
  Row r;
  r.label = "multihop";
  r.service = "telnet";
  r.duration = g.uniform(100, 500);
  r.src_bytes = g.uniform(500, 2000);
  r.dst_bytes = g.uniform(2000, 8000);
  r.logged_in = 1;
  r.hot = g.uniform(2, 8);
  r.num_root = g.uniform(1, 3);
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row phf_row(Gen& g) {
  Row r;
  r.label = "phf";
  r.service = "http";
  r.duration = g.uniform(1, 3);
  r.src_bytes = 51;
  r.dst_bytes = 8127;
  r.logged_in = 1;
  r.num_access_files = 1;
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row spy_row(Gen& g) {
  Row r;
  r.label = "spy";
  r.service = "telnet";
  r.duration = g.uniform(200, 600);
  r.src_bytes = g.uniform(1000, 2000);
  r.dst_bytes = g.uniform(2000, 6000);
  r.logged_in = 1;
  r.hot = 2;
  r.num_access_files = g.uniform(1, 2);
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row u2r_base(Gen& g, const char* label) {
  Row r;
  r.label = label;
  r.service = "telnet";
  r.duration = g.uniform(60, 300);
  r.src_bytes = g.uniform(1000, 6000);
  r.dst_bytes = g.uniform(200, 2000);
  r.logged_in = 1;
  r.root_shell = 1;
  r.hot = g.uniform(1, 3);
  r.num_root = g.uniform(1, 5);
  r.count = 1;
  r.srv_count = 1;
  r.dst_host_count = g.uniform(1, 10);
  r.dst_host_srv_count = g.uniform(1, 10);
  return r;
}

Row buffer_overflow_row(Gen& g) {
  Row r = u2r_base(g, "buffer_overflow");
  r.num_compromised = 1;
  r.num_file_creations = g.uniform(1, 2);
  return r;
}

Row rootkit_row(Gen& g) {
  Row r = u2r_base(g, "rootkit");
  r.num_file_creations = g.uniform(2, 5);
  r.num_compromised = g.uniform(0, 2);
  return r;
}

Row loadmodule_row(Gen& g) {
  Row r = u2r_base(g, "loadmodule");
  r.num_file_creations = 1;
  r.su_attempted = 1;
  return r;
}

Row perl_row(Gen& g) {
  Row r = u2r_base(g, "perl");
  r.duration = g.uniform(30, 60);
  r.num_shells = 1;
  return r;
}

// Residual measurement noise on the rate features, applied to every row, so
// no class is numerically constant there (real traffic leaves the same kind
// of residue).
void jitter_rates(Row& r, Gen& g) {
  auto bump = [&](double& v) {
    if (v == 0.0) v = g.rate2(g.u01() * 0.06);
  };
  bump(r.serror_rate);
  bump(r.srv_serror_rate);
  bump(r.rerror_rate);
  bump(r.srv_rerror_rate);
  bump(r.diff_srv_rate);
  bump(r.srv_diff_host_rate);
  bump(r.dst_host_same_src_port_rate);
  bump(r.dst_host_srv_diff_host_rate);
  bump(r.dst_host_diff_srv_rate);
  bump(r.dst_host_serror_rate);
  bump(r.dst_host_srv_serror_rate);
  bump(r.dst_host_rerror_rate);
  bump(r.dst_host_srv_rerror_rate);
  if (r.same_srv_rate == 1.0)
    r.same_srv_rate = g.rate2(0.94 + 0.06 * g.u01());
  if (r.dst_host_same_srv_rate == 1.0)
    r.dst_host_same_srv_rate = g.rate2(0.94 + 0.06 * g.u01());
}

struct Subcategory {
  const char* name;
  std::size_t official_count;  // 10% distribution totals
  Row (*make)(Gen&);
};

const std::array<Subcategory, 23> kSubcategories = {{
    {"smurf", 280790, smurf_row},
    {"neptune", 107201, neptune_row},
    {"back", 2203, back_row},
    {"teardrop", 979, teardrop_row},
    {"pod", 264, pod_row},
    {"land", 21, land_row},
    {"normal", 97277, normal_row},
    {"satan", 1589, satan_row},
    {"ipsweep", 1247, ipsweep_row},
    {"portsweep", 1040, portsweep_row},
    {"nmap", 231, nmap_row},
    {"warezclient", 1020, warezclient_row},
    {"guess_passwd", 53, guess_passwd_row},
    {"warezmaster", 20, warezmaster_row},
    {"imap", 12, imap_row},
    {"ftp_write", 8, ftp_write_row},
    {"multihop", 7, multihop_row},
    {"phf", 4, phf_row},
    {"spy", 2, spy_row},
    {"buffer_overflow", 30, buffer_overflow_row},
    {"rootkit", 10, rootkit_row},
    {"loadmodule", 9, loadmodule_row},
    {"perl", 3, perl_row},
}};

// Largest-remainder quotas over the official proportions, then at least one
// row per subcategory, borrowed from the biggest quota.
std::vector<std::size_t> quotas(std::size_t rows) {
  std::size_t total = 0;
  for (const auto& s : kSubcategories) total += s.official_count;

  std::vector<std::size_t> quota(kSubcategories.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < kSubcategories.size(); ++i) {
    const double exact = static_cast<double>(rows) *
                         static_cast<double>(kSubcategories[i].official_count) /
                         static_cast<double>(total);
    quota[i] = static_cast<std::size_t>(exact);
    assigned += quota[i];
    remainders.emplace_back(exact - static_cast<double>(quota[i]), i);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < rows && i < remainders.size(); ++i) {
    ++quota[remainders[i].second];
    ++assigned;
  }
  for (std::size_t i = 0; i < quota.size(); ++i) {
    if (quota[i] > 0) continue;
    std::size_t donor = 0;
    for (std::size_t d = 1; d < quota.size(); ++d)
      if (quota[d] > quota[donor]) donor = d;
    --quota[donor];
    quota[i] = 1;
  }
  return quota;
}

std::string format_row(const Row& r) {
  char rates[11][8];
  const double values[11] = {
      r.serror_rate,          r.srv_serror_rate,
      r.rerror_rate,          r.srv_rerror_rate,
      r.same_srv_rate,        r.diff_srv_rate,
      r.srv_diff_host_rate,   r.dst_host_same_srv_rate,
      r.dst_host_diff_srv_rate, r.dst_host_same_src_port_rate,
      r.dst_host_srv_diff_host_rate};
  for (int i = 0; i < 11; ++i)
    std::snprintf(rates[i], sizeof(rates[i]), "%.2f", values[i]);
  char tail[4][8];
  const double tail_values[4] = {r.dst_host_serror_rate,
                                 r.dst_host_srv_serror_rate,
                                 r.dst_host_rerror_rate,
                                 r.dst_host_srv_rerror_rate};
  for (int i = 0; i < 4; ++i)
    std::snprintf(tail[i], sizeof(tail[i]), "%.2f", tail_values[i]);

  std::string out;
  out.reserve(256);
  auto add_int = [&](double v) {
    out += std::to_string(static_cast<long long>(v));
    out += ',';
  };
  auto add_str = [&](const std::string& v) {
    out += v;
    out += ',';
  };
  add_int(r.duration);
  add_str(r.protocol);
  add_str(r.service);
  add_str(r.flag);
  add_int(r.src_bytes);
  add_int(r.dst_bytes);
  add_int(r.land);
  add_int(r.wrong_fragment);
  add_int(r.urgent);
  add_int(r.hot);
  add_int(r.num_failed_logins);
  add_int(r.logged_in);
  add_int(r.num_compromised);
  add_int(r.root_shell);
  add_int(r.su_attempted);
  add_int(r.num_root);
  add_int(r.num_file_creations);
  add_int(r.num_shells);
  add_int(r.num_access_files);
  add_int(r.num_outbound_cmds);
  add_int(r.is_host_login);
  add_int(r.is_guest_login);
  add_int(r.count);
  add_int(r.srv_count);
  for (int i = 0; i < 7; ++i) add_str(rates[i]);
  add_int(r.dst_host_count);
  add_int(r.dst_host_srv_count);
  for (int i = 7; i < 11; ++i) add_str(rates[i]);
  for (int i = 0; i < 4; ++i) add_str(tail[i]);
  out += r.label;
  out += '.';
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled KDD-format fixture"};
  std::size_t rows = 1000;
  std::uint64_t seed = 1;
  std::string out = "data/kdd_fixture_1000.csv";
  app.add_option("--rows", rows, "number of rows");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--out", out, "output path");
  CLI11_PARSE(app, argc, argv);

  Gen gen(seed);
  const std::vector<std::size_t> quota = quotas(rows);
  std::vector<std::string> lines;
  lines.reserve(rows);
  for (std::size_t i = 0; i < kSubcategories.size(); ++i)
    for (std::size_t n = 0; n < quota[i]; ++n) {
      Row row = kSubcategories[i].make(gen);
      jitter_rates(row, gen);
      lines.push_back(format_row(row));
    }
  featsel::deterministic_shuffle(lines, gen.raw());

  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "cannot open " << out << "\n";
    return 2;
  }
  for (const auto& line : lines) file << line << "\n";
  std::cout << "wrote " << lines.size() << " rows to " << out << "\n";
  return 0;
}
