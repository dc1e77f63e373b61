// Copyright 2026 The storvalue Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "storvalue/scenario.h"

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "storvalue/error.h"

namespace storvalue {
namespace {

constexpr char kFullHeader[] =
    "timestamp,price,demand_forecast,renewable_forecast,demand_actual,"
    "renewable_actual\n";

std::string DayCsv() {
  std::ostringstream csv;
  csv << kFullHeader;
  for (int h = 0; h < 24; ++h) {
    csv << "2019-01-01T" << (h < 10 ? "0" : "") << h << ":00," << 20 + h
        << ".5," << 50 + h << ',' << h * 2 << ',' << 50 + h << ','
        << h * 2 - (h % 3) * 0.25 + (h == 0 ? 0.5 : 0.0) << '\n';
  }
  return csv.str();
}

TEST(LoadScenarioTest, ParsesAllFiveSeries) {
  std::istringstream in(DayCsv());
  const ScenarioData s = ReadScenarioCsv(in);
  EXPECT_EQ(s.horizon(), 24);
  ASSERT_TRUE(s.demand_actual.has_value());
  ASSERT_TRUE(s.renewable_actual.has_value());
  EXPECT_EQ(s.timestamps.front(), "2019-01-01T00:00");
  EXPECT_DOUBLE_EQ(s.price[3], 23.5);
  EXPECT_DOUBLE_EQ(s.demand_forecast[23], 73.0);
  EXPECT_DOUBLE_EQ(s.renewable_forecast[5], 10.0);
  EXPECT_DOUBLE_EQ((*s.renewable_actual)[5], 10.0 - 0.5);
}

TEST(LoadScenarioTest, MissingColumnIsReported) {
  std::istringstream in("timestamp,price,demand_forecast\n1,2,3\n");
  try {
    ReadScenarioCsv(in);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::strstr(e.what(), "missing column"), nullptr);
    EXPECT_NE(std::strstr(e.what(), "renewable_forecast"), nullptr);
  }
}

TEST(LoadScenarioTest, NegativePriceIsLegal) {
  std::istringstream in(
      "timestamp,price,demand_forecast,renewable_forecast\n"
      "1,10,5,1\n2,-5.0,5,1\n3,12,5,1\n");
  const ScenarioData s = ReadScenarioCsv(in);
  EXPECT_DOUBLE_EQ(s.price[1], -5.0);
  EXPECT_FALSE(s.demand_actual.has_value());
}

TEST(LoadScenarioTest, RejectsBadRows) {
  const char* header = "timestamp,price,demand_forecast,renewable_forecast\n";
  for (const char* body : {"1,10,-5,1\n",          // negative demand
                           "1,10,5,-0.1\n",        // negative renewable
                           "1,ten,5,1\n",          // non-numeric
                           "1,10,5\n",             // short row
                           "1,10,5,1\n1,10,5,1\n",  // repeated timestamp
                           "1,10,5,1x\n"}) {       // trailing garbage
    std::istringstream in(std::string(header) + body);
    EXPECT_THROW(ReadScenarioCsv(in), ValidationError) << body;
  }
}

TEST(LoadScenarioTest, CustomColumnMap) {
  ColumnMap columns;
  columns.price = "eur_mwh";
  columns.demand_forecast = "load_da";
  columns.renewable_forecast = "wind_da";
  std::istringstream in("load_da,eur_mwh,wind_da\n10,30,4\n12,-1,3\n");
  const ScenarioData s = ReadScenarioCsv(in, columns);
  EXPECT_EQ(s.horizon(), 2);
  EXPECT_TRUE(s.timestamps.empty());
  EXPECT_DOUBLE_EQ(s.price[1], -1.0);
  EXPECT_DOUBLE_EQ(s.demand_forecast[1], 12.0);
}

// load -> write -> load reproduces every double bit for bit.
TEST(LoadScenarioTest, RoundTripIsBitIdentical) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(0.0, 1000.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::ostringstream csv;
    csv << kFullHeader;
    for (int t = 0; t < 48; ++t) {
      csv.precision(3 + trial % 15);
      csv << t << ',' << value(rng) - 300.0 << ',' << value(rng) << ','
          << value(rng) << ',' << value(rng) << ',' << value(rng) << '\n';
    }
    std::istringstream first(csv.str());
    const ScenarioData a = ReadScenarioCsv(first);
    std::ostringstream written;
    WriteScenarioCsv(written, a);
    std::istringstream second(written.str());
    const ScenarioData b = ReadScenarioCsv(second);
    ASSERT_EQ(a.horizon(), b.horizon());
    for (int t = 0; t < a.horizon(); ++t) {
      ASSERT_EQ(std::memcmp(&a.price[t], &b.price[t], sizeof(double)), 0);
      ASSERT_EQ(std::memcmp(&a.demand_forecast[t], &b.demand_forecast[t],
                            sizeof(double)),
                0);
      ASSERT_EQ(std::memcmp(&(*a.renewable_actual)[t],
                            &(*b.renewable_actual)[t], sizeof(double)),
                0);
    }
    std::ostringstream rewritten;
    WriteScenarioCsv(rewritten, b);
    EXPECT_EQ(written.str(), rewritten.str());
  }
}

TEST(ExtractErrorsTest, AbsoluteMode) {
  ScenarioData s;
  s.price = {1, 1};
  s.demand_forecast = {1, 1};
  s.renewable_forecast = {2, 3};
  s.renewable_actual = std::vector<double>{1, 3};
  const ErrorSampleSet e = ExtractErrors(s, ErrorMode::kAbsolute);
  EXPECT_EQ(e.samples, (std::vector<double>{1.0, 0.0}));
}

TEST(ExtractErrorsTest, PerfectForecastGivesZeros) {
  const ScenarioData s = SynthesizeScenario(3, 48);
  ScenarioData perfect = s;
  perfect.renewable_actual = s.renewable_forecast;
  for (double e : ExtractErrors(perfect, ErrorMode::kAbsolute).samples) {
    EXPECT_EQ(e, 0.0);
  }
}

TEST(ExtractErrorsTest, RelativeMode) {
  ScenarioData s;
  s.price = {1};
  s.demand_forecast = {1};
  s.renewable_forecast = {10};
  s.renewable_actual = std::vector<double>{6};
  const ErrorSampleSet e = ExtractErrors(s, ErrorMode::kRelative, 100.0);
  ASSERT_EQ(e.samples.size(), 1u);
  EXPECT_NEAR(e.samples[0], 0.04, 1e-15);
  EXPECT_DOUBLE_EQ(e.unit_scale(), 100.0);
  EXPECT_THROW(ExtractErrors(s, ErrorMode::kRelative, 0.0), ValidationError);
}

TEST(ExtractErrorsTest, RequiresActuals) {
  ScenarioData s;
  s.price = {1};
  s.demand_forecast = {1};
  s.renewable_forecast = {10};
  EXPECT_THROW(ExtractErrors(s, ErrorMode::kAbsolute), ValidationError);
}

TEST(SynthesizeScenarioTest, DeterministicPerSeed) {
  const ScenarioData a = SynthesizeScenario(1, 24);
  const ScenarioData b = SynthesizeScenario(1, 24);
  const ScenarioData c = SynthesizeScenario(2, 24);
  EXPECT_EQ(a.price, b.price);
  EXPECT_EQ(a.demand_forecast, b.demand_forecast);
  EXPECT_EQ(a.renewable_forecast, b.renewable_forecast);
  EXPECT_EQ(*a.renewable_actual, *b.renewable_actual);
  EXPECT_NE(a.price, c.price);
  EXPECT_NO_THROW(ValidateScenario(a));
}

TEST(SynthesizeScenarioTest, NegativePriceProbability) {
  GeneratorConfig config;
  config.negative_price_probability = 0.1;
  const ScenarioData s = SynthesizeScenario(11, 1000, config);
  int negative = 0;
  for (double p : s.price) negative += p < 0.0;
  // Binomial(1000, 0.1): mean 100, sd ~9.5. The base price never drops
  // below zero with the default config, so every negative is injected.
  EXPECT_GT(negative, 50);
  EXPECT_LT(negative, 150);
  for (double d : s.demand_forecast) EXPECT_GE(d, 0.0);
}

TEST(SynthesizeScenarioTest, RejectsEmptyHorizon) {
  EXPECT_THROW(SynthesizeScenario(1, 0), ValidationError);
}

TEST(SplitScenarioTest, DropsTrailingPartialWindow) {
  const ScenarioData s = SynthesizeScenario(5, 50);
  const auto days = SplitScenario(s, 24);
  ASSERT_EQ(days.size(), 2u);
  EXPECT_EQ(days[1].horizon(), 24);
  EXPECT_EQ(days[1].price.front(), s.price[24]);
  EXPECT_EQ(days[1].timestamps.front(), s.timestamps[24]);
}

}  // namespace
}  // namespace storvalue
