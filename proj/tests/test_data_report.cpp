#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "mcmpb/data.hpp"
#include "mcmpb/fit.hpp"
#include "mcmpb/report.hpp"

using namespace mcmpb;

namespace {

std::string message_of(const std::string& text, const std::string& source) {
    try {
        parse_dataset(text, source);
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("dataset parser accepts comments, metadata, and padding") {
    const std::string text =
        "# survey tallies\n"
        "\n"
        "count,frequency\n"
        " 0 , 4\n"
        "2,6\n"
        "# truncated_at_zero=false\n"
        "5,0\n";
    const frequency_data d = parse_dataset(text, "inline");
    REQUIRE(d.rows.size() == 3);
    CHECK(d.rows[0].value == 0);
    CHECK(d.rows[0].frequency == 4);
    CHECK(d.rows[1].value == 2);
    CHECK(d.max_value() == 5);
    CHECK(d.total() == 10);
    CHECK(d.mean() == doctest::Approx(1.2));
    CHECK_FALSE(d.truncated_at_zero);

    const frequency_data t =
        parse_dataset("# truncated_at_zero=true\ncount,frequency\n1,3\n2,1\n", "inline");
    CHECK(t.truncated_at_zero);
}

TEST_CASE("dataset parser reports positioned errors") {
    CHECK(message_of("", "src.csv").find("src.csv:1:1") != std::string::npos);
    CHECK(message_of("", "src.csv").find("empty dataset: missing 'count,frequency' header") !=
          std::string::npos);
    CHECK(message_of("0,5\n", "src.csv").find("expected header") != std::string::npos);
    CHECK(message_of("count,frequency\n0,5\n1,x\n", "src.csv").find("src.csv:3:3") !=
          std::string::npos);
    CHECK(message_of("count,frequency\n0,5\n1,x\n", "src.csv").find("invalid frequency") !=
          std::string::npos);
    CHECK(message_of("count,frequency\n2,5\n1,3\n", "src.csv").find("src.csv:3:1") !=
          std::string::npos);
    CHECK(message_of("count,frequency\n2,5\n2,3\n", "src.csv").find("strictly increasing") !=
          std::string::npos);
    CHECK(message_of("count,frequency\n0,-2\n", "src.csv").find("frequency must be >= 0") !=
          std::string::npos);
    CHECK(message_of("count,frequency\n0 5\n", "src.csv").find("expected 'value,frequency'") !=
          std::string::npos);
    CHECK(message_of("# truncated_at_zero=true\ncount,frequency\n0,5\n", "src.csv")
              .find("truncated") != std::string::npos);
}

TEST_CASE("bundled fixtures parse with the recorded totals") {
    const std::vector<std::string> names = fixture_names();
    REQUIRE(names.size() == 4);
    CHECK(is_fixture("bacterial"));
    CHECK(is_fixture("saxony"));
    CHECK(is_fixture("linnet"));
    CHECK(is_fixture("trip"));
    CHECK_FALSE(is_fixture("nope"));
    CHECK_THROWS_AS(load_fixture("nope"), std::invalid_argument);

    CHECK(load_fixture("bacterial").total() == 400);
    CHECK(load_fixture("saxony").total() == 6115);
    CHECK(load_fixture("linnet").total() == 5414);
    CHECK(load_fixture("trip").total() == 1839);
    CHECK(load_fixture("linnet").truncated_at_zero);
    CHECK_FALSE(load_fixture("trip").truncated_at_zero);
    CHECK(load_fixture("bacterial").max_value() == 19);
    CHECK(load_fixture("saxony").max_value() == 12);
}

TEST_CASE("sufficient statistics demand a feasible support bound") {
    const frequency_data saxony = load_fixture("saxony");
    CHECK_THROWS_AS(compute_sufficient_stats(saxony, 10), std::invalid_argument);
    const sufficient_stats s = compute_sufficient_stats(saxony, 12);
    CHECK(s.s1 == doctest::Approx(saxony.mean()).epsilon(1e-12));
    CHECK(s.s2 < 0.0);
    CHECK(s.s3 < 0.0);
}

TEST_CASE("fit reports round-trip through JSON without loss") {
    const fit_report r = fit_fixed_n(load_fixture("saxony"), 12);
    const std::string doc = report_to_json(r);
    const fit_report back = report_from_json(doc);
    CHECK(back == r);

    // Key numeric fields appear with ample precision in the document.
    CHECK(doc.find("\"loglik\"") != std::string::npos);
    CHECK(doc.find("\"estimates\"") != std::string::npos);
    CHECK(doc.find("\"gof\"") != std::string::npos);
}

TEST_CASE("text rendering shows the parameter block and the fitted table") {
    const fit_report r = fit_fixed_n(load_fixture("saxony"), 12);
    const std::string text = report_to_text(r, "saxony");
    CHECK(text.find("model: mcmpb") != std::string::npos);
    CHECK(text.find("saxony") != std::string::npos);
    CHECK(text.find("alpha") != std::string::npos);
    CHECK(text.find("beta") != std::string::npos);
    CHECK(text.find("psi") != std::string::npos);
    CHECK(text.find("loglik") != std::string::npos);
    CHECK(text.find("AIC") != std::string::npos);
    CHECK(text.find("chi-square") != std::string::npos);
    CHECK(text.find("count") != std::string::npos);

    fit_report warn = r;
    warn.converged = false;
    warn.boundary_solution = true;
    const std::string wtext = report_to_text(warn, "saxony");
    CHECK(wtext.find("WARNING") != std::string::npos);
}
