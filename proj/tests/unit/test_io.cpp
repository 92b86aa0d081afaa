#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gsteer/errors.hpp"
#include "gsteer/io.hpp"
#include "gsteer/random.hpp"
#include "gsteer/twomode.hpp"
#include "test_helpers.hpp"

using namespace gsteer;

TEST_CASE("CM round trips exactly through JSON and CSV") {
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const CovarianceMatrix s = random_cm(1 + i % 3, 1 + (i / 3) % 2, 1.0 + i % 5, rng);
    const CovarianceMatrix j = io::parse_cm(io::cm_to_json(s));
    const CovarianceMatrix c = io::parse_cm(io::cm_to_csv(s));
    CHECK(j.matrix() == s.matrix());
    CHECK(c.matrix() == s.matrix());
    CHECK(j.n_a() == s.n_a());
    CHECK(c.n_b() == s.n_b());
    CHECK(io::write_cm(s, io::Format::Csv) == io::cm_to_csv(s));
  }
}

TEST_CASE("hand-written inputs") {
  const CovarianceMatrix j = io::parse_cm(R"({"n_a": 1, "n_b": 1, "matrix": [2,0,1.7320508075688772,0, 0,2,0,-1.7320508075688772, 1.7320508075688772,0,2,0, 0,-1.7320508075688772,0,2]})");
  CHECK(j.n_a() == 1);
  CHECK(j.matrix()(0, 2) == doctest::Approx(std::sqrt(3.0)));

  const CovarianceMatrix c = io::parse_cm("1,1\n1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
  CHECK(c.matrix() == Matrix::Identity(4, 4));
}

TEST_CASE("malformed inputs raise parse errors") {
  const char* cases[] = {
      "",
      "{not json",
      R"({"n_a": 1, "matrix": [1,0,0,1]})",
      R"({"n_a": 1, "n_b": 1, "matrix": [1,0,0,1]})",
      R"({"n_a": 1.5, "n_b": 1, "matrix": []})",
      R"({"n_a": 1, "n_b": 1, "matrix": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,"x"]})",
      R"({"n_a": 1, "n_b": 1, "matrix": [1,5,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1]})",
      "1,1\n1,0,0,0\n0,1,0,0\n0,0,1,0\n",
      "1,1\n1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,abc\n",
      "1\n1,0\n0,1\n",
      "0,1\n1,0\n0,1\n",
      "1,1\n1,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n",
      "garbage text",
  };
  for (const char* text : cases) {
    CAPTURE(text);
    CHECK_THROWS_AS(io::parse_cm(text), ParseError);
  }
  CHECK_THROWS_AS(io::read_cm_file("/nonexistent/cm.json"), ParseError);
}

TEST_CASE("numbers print with 17 significant digits") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(std::log(2.0)) == "0.69314718055994529");
  CHECK(io::format_number(1.0) == "1");
  for (double x : {std::log(3.0), 1e-300, 123456.789, -2.5e8})
    CHECK(std::stod(io::format_number(x)) == x);

  const std::string dumped = io::dump_json(nlohmann::json{{"x", 0.1}, {"v", {1.0, 2.0}}});
  CHECK(dumped.find("0.10000000000000001") != std::string::npos);
  CHECK(nlohmann::json::parse(dumped)["x"].get<double>() == 0.1);
}

TEST_CASE("report JSON has exactly the steering fields") {
  const nlohmann::json j = io::to_json(steering_report(tmsv_state(2.0)));
  CHECK(j.size() == 8);
  for (const char* key : {"g_a_to_b", "g_b_to_a", "nu_a", "nu_b", "steerable_a_to_b", "steerable_b_to_a",
                          "reid_product_a", "reid_product_b"})
    CHECK(j.contains(key));
  CHECK(j["g_a_to_b"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("other serializers") {
  const nlohmann::json label = io::to_json(classify_two_mode(PurityProfile::from_ratio(0.4, 0.8, 0.6)));
  CHECK(label["physicality"] == "unphysical");
  CHECK(label["separability"].is_null());

  const nlohmann::json e = io::to_json(entanglement_renyi2(extremal_state(2.0)));
  CHECK(e["kind"] == "exact-asymptotic");
  CHECK(e["extremal_s"].get<double>() == doctest::Approx(2.0));

  const nlohmann::json k = io::to_json(key_rate_bound(1.0), true);
  CHECK(k.dump().find("bits") != std::string::npos);
}

TEST_CASE("reading from a file") {
  const auto path = std::filesystem::temp_directory_path() / "gsteer_test_io_cm.csv";
  {
    std::ofstream f(path);
    f << io::cm_to_csv(tmsv_state(2.0));
  }
  CHECK(io::read_cm_file(path).matrix() == tmsv_state(2.0).matrix());
  std::filesystem::remove(path);
}
