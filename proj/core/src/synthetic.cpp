// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pcosrisk/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>
#include <vector>

#include "pcosrisk/random.hpp"

namespace pcosrisk {

namespace {

constexpr std::string_view kHeader =
    "Sl. No,Patient File No.,PCOS (Y/N), Age (yrs),Weight (Kg),Height(Cm) ,"
    "BMI,Blood Group,Pulse rate(bpm) ,RR (breaths/min),Hb(g/dl),Cycle(R/I),"
    "Cycle length(days),Marraige Status (Yrs),Pregnant(Y/N),"
    "No. of aborptions,  I   beta-HCG(mIU/mL),II    beta-HCG(mIU/mL),"
    "FSH(mIU/mL),LH(mIU/mL),FSH/LH,Hip(inch),Waist(inch),Waist:Hip Ratio,"
    "TSH (mIU/L),AMH(ng/mL),PRL(ng/mL),Vit D3 (ng/mL),PRG(ng/mL),"
    "RBS(mg/dl),Weight gain(Y/N),hair growth(Y/N),Skin darkening (Y/N),"
    "Hair loss(Y/N),Pimples(Y/N),Fast food (Y/N),Reg.Exercise(Y/N),"
    "BP _Systolic (mmHg),BP _Diastolic (mmHg),Follicle No. (L),"
    "Follicle No. (R),Avg. F size (L) (mm),Avg. F size (R) (mm),"
    "Endometrium (mm),Unnamed: 44";

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double Normal(double mean, double sd, double lo, double hi) {
    return std::clamp(mean + sd * StandardNormal(rng_), lo, hi);
  }
  double LogNormal(double median, double sigma, double hi) {
    return std::min(median * std::exp(sigma * StandardNormal(rng_)), hi);
  }
  int Flag(double p) { return UniformUnit(rng_) < p ? 1 : 0; }
  int Count(double mean, double sd, int lo, int hi) {
    return static_cast<int>(std::lround(Normal(mean, sd, lo, hi)));
  }
  std::uint64_t Index(std::uint64_t n) { return UniformIndex(rng_, n); }

 private:
  Rng rng_;
};

std::string Num(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string SyntheticKeralaCsv(std::size_t rows, std::uint64_t seed) {
  Sampler s(seed);
  std::string out(kHeader);
  out += "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const int y = s.Flag(0.33);
    const double age = std::round(s.Normal(31.5 - 1.8 * y, 5.3, 20, 48));
    const double height = s.Normal(156.5, 6.0, 137, 180);
    const double weight = s.Normal(57.5 + 5.0 * y, 10.5, 31, 108);
    const double bmi = weight / std::pow(height / 100.0, 2);
    const int irregular = s.Flag(0.16 + 0.42 * y);
    const int cycle_len = s.Count(irregular ? 3.8 : 5.2, 1.3, 0, 12);
    const int married = s.Count(7.7, 4.8, 0, 30);
    const int pregnant = s.Flag(0.38);
    const int abortions = s.Flag(0.25) ? 1 + static_cast<int>(s.Index(3)) : 0;
    const double hcg1 = s.LogNormal(20.0, 2.0, 32460);
    const double hcg2 = s.LogNormal(8.0, 2.0, 25000);
    const double fsh = s.LogNormal(5.0, 0.45, 50);
    const double lh = s.LogNormal(2.2 + 0.6 * y, 0.6, 40);
    const double hip = s.Normal(37.9, 3.9, 26, 48);
    const double waist = s.Normal(33.5 + 1.3 * y, 3.7, 24, 47);
    const double tsh = s.LogNormal(2.5, 0.6, 65);
    const double amh = s.LogNormal(3.6 + 1.6 * y, 0.6, 66);
    const double prl = s.Normal(24.0, 14.0, 0.4, 128);
    const double vitd = s.Normal(25.0, 13.0, 0, 100);
    const double prg = s.LogNormal(0.55, 0.5, 85);
    const double rbs = s.Normal(99.0, 18.0, 60, 350);
    const int weight_gain = s.Flag(0.21 + 0.38 * y);
    const int hair_growth = s.Flag(0.16 + 0.34 * y);
    const int skin_dark = s.Flag(0.18 + 0.33 * y);
    const int hair_loss = s.Flag(0.40 + 0.14 * y);
    const int pimples = s.Flag(0.40 + 0.25 * y);
    const int fast_food = s.Flag(0.40 + 0.30 * y);
    const int exercise = s.Flag(0.26);
    const int bp_sys = s.Count(114, 7, 90, 140);
    const int bp_dia = s.Count(76, 6, 60, 100);
    const int fol_l = s.Count(4.4 + 4.6 * y, 3.3, 0, 22);
    const int fol_r = s.Count(5.0 + 4.9 * y, 3.4, 0, 20);
    const double fsize_l = s.Normal(15.0, 3.4, 0, 24);
    const double fsize_r = s.Normal(15.4, 3.3, 0, 24);
    const double endo = s.Normal(8.5, 2.2, 0, 18);
    const int pulse = s.Count(73, 4, 60, 82);
    const int rr = 18 + static_cast<int>(s.Index(5));
    const double hb = s.Normal(11.2, 0.87, 8.5, 14.8);
    const int blood_group = 11 + static_cast<int>(s.Index(8));

    // Sparse defects mirroring the public file: an empty marital-duration
    // cell, an empty fast-food cell and a stray letter in AMH.
    std::string married_cell = std::to_string(married);
    std::string fast_food_cell = std::to_string(fast_food);
    std::string amh_cell = Num(amh, 2);
    const auto defect = s.Index(400);
    if (defect == 0) married_cell.clear();
    if (defect == 1) fast_food_cell.clear();
    if (defect == 2) amh_cell = "a";

    const std::vector<std::string> cells = {
        std::to_string(i + 1),
        std::to_string(10000 + i),
        std::to_string(y),
        Num(age, 0),
        Num(weight, 1),
        Num(height, 1),
        Num(bmi, 2),
        std::to_string(blood_group),
        std::to_string(pulse),
        std::to_string(rr),
        Num(hb, 1),
        irregular ? "4" : "2",
        std::to_string(cycle_len),
        married_cell,
        std::to_string(pregnant),
        std::to_string(abortions),
        Num(hcg1, 2),
        Num(hcg2, 2),
        Num(fsh, 2),
        Num(lh, 2),
        Num(fsh / lh, 2),
        Num(hip, 0),
        Num(waist, 0),
        Num(waist / hip, 2),
        Num(tsh, 2),
        amh_cell,
        Num(prl, 2),
        Num(vitd, 1),
        Num(prg, 2),
        Num(rbs, 0),
        std::to_string(weight_gain),
        std::to_string(hair_growth),
        std::to_string(skin_dark),
        std::to_string(hair_loss),
        std::to_string(pimples),
        fast_food_cell,
        std::to_string(exercise),
        std::to_string(bp_sys),
        std::to_string(bp_dia),
        std::to_string(fol_l),
        std::to_string(fol_r),
        Num(fsize_l, 1),
        Num(fsize_r, 1),
        Num(endo, 1),
        "",
    };
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ",";
      out += cells[c];
    }
    out += "\n";
  }
  return out;
}

}  // namespace pcosrisk
