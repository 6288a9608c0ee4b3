#include <doctest.h>

#include <json.hpp>
#include <map>
#include <sstream>

#include "sumrank/cli.hpp"
#include "sumrank/geometry.hpp"

using namespace sumrank;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == cli::kUsageError);
  CHECK(invoke({"volumes", "--q", "6", "--m", "1", "--eta", "1", "--ell", "1"}).code == cli::kUsageError);
  CHECK(invoke({"volumes", "--q", "2", "--m", "2", "--eta", "0", "--ell", "2"}).code == cli::kUsageError);
  CHECK(invoke({"bounds", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2"}).code == cli::kUsageError);
  CHECK(invoke({"bounds", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2", "--rho", "5"}).code ==
        cli::kUsageError);
  CHECK(invoke({"volumes", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2", "--format", "xml"}).code ==
        cli::kUsageError);
  CHECK(invoke({"frobnicate"}).code == cli::kUsageError);
}

TEST_CASE("volumes output") {
  const auto csv = invoke({"volumes", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const auto rows = parse_csv(csv.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"t", "sphere", "ball"});
  CHECK(rows[2] == std::vector<std::string>{"1", "18", "19"});
  CHECK(rows[5][2] == "256");

  const auto js = invoke({"volumes", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2", "--format", "json"});
  REQUIRE(js.code == 0);
  const json doc = json::parse(js.out);
  REQUIRE(doc["rows"].size() == 5);
  for (std::size_t t = 0; t < 5; ++t) {
    CHECK(cell_text(doc["rows"][t]["sphere"]) == rows[t + 1][1]);
    CHECK(cell_text(doc["rows"][t]["ball"]) == rows[t + 1][2]);
  }
}

TEST_CASE("bounds output agrees between json and csv") {
  const std::vector<std::string> base = {"bounds", "--q", "2", "--m", "1", "--eta", "1", "--ell", "7", "--rho", "0",
                                         "--rho-max", "3"};
  auto with = [&](const char* format) {
    auto args = base;
    args.push_back("--format");
    args.push_back(format);
    return invoke(args);
  };
  const auto js = with("json");
  const auto csv = with("csv");
  REQUIRE(js.code == 0);
  REQUIRE(csv.code == 0);

  // one JSON object per line, one per rho
  std::map<std::pair<std::string, std::string>, std::string> from_json;
  std::istringstream lines(js.out);
  std::string line;
  int reports = 0;
  while (std::getline(lines, line)) {
    const json doc = json::parse(line);
    const std::string rho = std::to_string(doc["rho"].get<int>());
    CHECK(doc["params"]["ell"] == 7);
    for (const auto& b : doc["bounds"]) from_json[{rho, b["name"]}] = cell_text(b["value"]);
    from_json[{rho, "best_lower"}] = cell_text(doc["best_lower"]);
    from_json[{rho, "best_upper"}] = cell_text(doc["best_upper"]);
    ++reports;
  }
  CHECK(reports == 4);

  const auto rows = parse_csv(csv.out);
  REQUIRE(rows.size() > 1);
  const auto& header = rows[0];
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  std::size_t compared = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto key = std::make_pair(rows[i][col("rho")], rows[i][col("name")]);
    REQUIRE(from_json.count(key) == 1);
    CHECK(from_json[key] == rows[i][col("value")]);
    ++compared;
  }
  CHECK(compared == from_json.size());
  CHECK(from_json[{"1", "best_lower"}] == "16");
  CHECK(from_json[{"0", "best_lower"}] == "128");
}

TEST_CASE("table output") {
  // no ell values: an empty grid
  const auto header_only = invoke({"table", "--q", "2", "--m", "2", "--eta", "2"});
  CHECK(header_only.code == 0);
  REQUIRE(parse_csv(header_only.out).size() == 1);
  CHECK(parse_csv(header_only.out)[0] == cli::table_columns());

  const auto two = invoke({"table", "--q", "2", "--m", "1", "--eta", "1", "--ell", "6,7", "--rho", "1"});
  REQUIRE(two.code == 0);
  const auto rows = parse_csv(two.out);
  REQUIRE(rows.size() == 3);
  const auto& header = rows[0];
  const auto gap = std::find(header.begin(), header.end(), "gap_ratio") - header.begin();
  const auto lower = std::find(header.begin(), header.end(), "best_lower") - header.begin();
  // the Hamming code closes the bracket at 16
  CHECK(rows[2][lower] == "16");
  CHECK(rows[2][gap] == "1");
  for (const auto& r : rows) CHECK(r.size() == header.size());

  const auto js = invoke({"table", "--q", "2", "--m", "1", "--eta", "1", "--ell", "6,7", "--rho", "1", "--format",
                          "json"});
  REQUIRE(js.code == 0);
  const json doc = json::parse(js.out);
  REQUIRE(doc["rows"].size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t c = 0; c < header.size(); ++c) CHECK(cell_text(doc["rows"][i][header[c]]) == rows[i + 1][c]);
  }

  CHECK(invoke({"table", "--q", "2,6", "--m", "1", "--eta", "1", "--ell", "3"}).code == cli::kUsageError);
  CHECK(invoke({"table", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2", "--rho", "2", "--rho-max", "1"}).code ==
        cli::kUsageError);
}

TEST_CASE("reruns are byte-identical") {
  const std::vector<std::string> args = {"table", "--q", "2,3", "--m", "2", "--eta", "1", "--ell", "2,3", "--seed",
                                         "7"};
  const auto first = invoke(args);
  const auto second = invoke(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("verify") {
  const auto ok = invoke({"verify", "--q", "2", "--m", "1", "--eta", "1", "--ell", "5", "--format", "json"});
  CHECK(ok.code == 0);
  const json doc = json::parse(ok.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["failures"].empty());

  // a wrong composition count is caught and named
  cli::Hooks broken;
  broken.composition_count = [](std::int64_t t, std::int64_t ell, std::int64_t mu) {
    ExactInt total = 0;
    for (std::int64_t i = 0; i <= ell; ++i) {
      const ExactInt term = binomial(ell, i) * binomial(t + ell - (mu + 1) * i, ell - 1);
      total += i % 2 == 0 ? term : ExactInt(-term);
    }
    return total;
  };
  const auto bad = invoke({"verify", "--q", "2", "--m", "1", "--eta", "1", "--ell", "2", "--format", "json"}, broken);
  CHECK(bad.code == cli::kVerifyFailed);
  const json bad_doc = json::parse(bad.out);
  REQUIRE(bad_doc["failures"].size() == 1);
  CHECK(bad_doc["failures"][0] == "composition_count");

  const auto big = invoke({"verify", "--q", "3", "--m", "3", "--eta", "3", "--ell", "2"});
  CHECK(big.code == cli::kBudgetExhausted);
  const auto slow = invoke({"verify", "--q", "2", "--m", "2", "--eta", "2", "--ell", "2", "--budget-secs", "0.001"});
  CHECK(slow.code == cli::kBudgetExhausted);
}
