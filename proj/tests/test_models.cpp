// Catalog tests: exponent layouts of the fifteen families, validation errors,
// transform-domain values, and the JSON descriptor round trip.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "azvisco/model_json.hpp"
#include "azvisco/models.hpp"

using namespace azvisco;
using Catch::Approx;

namespace {

struct CatalogRow {
    ModelCode code;
    FractionalOrders orders;
    std::vector<double> p;  // expected phi_sigma exponents
    std::vector<double> q;  // expected phi_epsilon exponents
    double xi;
    std::optional<double> lambda_order;
    std::optional<double> kappa_order;
};

FractionalOrders ord(std::optional<double> al, std::optional<double> be, std::optional<double> ga,
                     std::optional<double> mu, std::optional<double> nu, std::optional<double> et) {
    FractionalOrders o;
    o.alpha = al;
    o.beta = be;
    o.gamma = ga;
    o.mu = mu;
    o.nu = nu;
    o.eta = et;
    return o;
}

// One structurally valid order choice per family, with the exponent layout
// restated independently of the library.
std::vector<CatalogRow> catalog_rows() {
    std::vector<CatalogRow> rows;
    const auto none = std::optional<double>{};
    rows.push_back({ModelCode::ID_ID, ord(0.4, 0.3, none, 0.2, none, none),
                    {0.0, 0.7}, {0.0, 0.7}, 0.2, none, none});
    rows.push_back({ModelCode::ID_DDp, ord(0.3, 0.2, none, 0.4, none, none),
                    {0.0, 0.5}, {0.0, 0.5}, 0.7, none, none});
    rows.push_back({ModelCode::IID_IID, ord(0.6, 0.2, 0.3, none, none, 0.5),
                    {0.0, 0.4, 0.9}, {0.0, 0.4, 0.9}, 0.2, 0.4, none});
    rows.push_back({ModelCode::IDD_IDD, ord(0.5, 0.2, 0.4, 0.3, none, none),
                    {0.0, 0.7, 0.9}, {0.0, 0.7, 0.9}, 0.2, 0.7, none});
    rows.push_back({ModelCode::IID_IDD, ord(0.6, 0.3, 0.35, 0.25, 0.5, none),
                    {0.0, 0.75, 0.95}, {0.0, 0.3, 0.95}, 0.35, 0.75, 0.3});
    rows.push_back({ModelCode::IpID_IpID, ord(0.3, none, 0.4, 0.2, none, none),
                    {0.0, 0.85, 1.7}, {0.0, 0.85, 1.7}, 0.1, none, none});
    rows.push_back({ModelCode::IDDp_IDDp, ord(0.3, none, 0.3, none, none, 0.5),
                    {0.0, 0.8, 1.6}, {0.0, 0.8, 1.6}, 0.2, none, none});
    rows.push_back({ModelCode::IpID_IDDp, ord(0.3, none, 0.5, none, none, 0.3),
                    {0.0, 0.9, 1.8}, {0.0, 0.9, 1.8}, 0.8, none, none});
    rows.push_back({ModelCode::IID_ID, ord(0.4, 0.5, 0.2, none, 0.3, none),
                    {0.0, 0.4, 0.9}, {0.0, 0.9}, 0.3, 0.4, 0.9});
    rows.push_back({ModelCode::IDD_DDp, ord(0.3, 0.2, none, 0.6, none, none),
                    {0.0, 0.5, 0.9}, {0.0, 0.5}, 0.9, 0.5, 0.9});
    rows.push_back({ModelCode::IpID_ID, ord(0.35, 0.55, none, none, 0.4, none),
                    {0.0, 0.9, 1.8}, {0.0, 0.9}, 0.95, none, none});
    rows.push_back({ModelCode::IDDp_DDp, ord(0.3, 0.4, none, 0.5, none, none),
                    {0.0, 0.7, 1.4}, {0.0, 0.7}, 0.8, none, none});
    rows.push_back({ModelCode::ID_IDD, ord(0.2, 0.3, none, 0.6, 0.4, none),
                    {0.0, 1.0}, {0.0, 0.5, 1.0}, 0.4, 1.0, 0.5});
    rows.push_back({ModelCode::ID_DDDp, ord(0.3, 0.2, none, 0.3, 0.6, none),
                    {0.0, 0.5}, {0.0, 0.3, 0.8}, 0.6, 0.3, 0.8});
    rows.push_back({ModelCode::ID_IDDp, ord(0.3, 0.2, none, none, 0.6, none),
                    {0.0, 0.5}, {0.0, 0.5, 1.0}, 0.4, none, none});
    return rows;
}

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

ModelSpec case1() {
    return build_model(ModelCode::IpID_ID, ord(0.35, 0.55, {}, {}, 0.4, {}),
                       {0.05, 1.5, 0.45}, {0.7, 0.95});
}

}  // namespace

TEST_CASE("all fifteen families produce the cataloged exponent layout") {
    for (const CatalogRow& row : catalog_rows()) {
        INFO("model " << to_string(row.code));
        const ModelSpec m = build_model(row.code, row.orders, ones(row.p.size()), ones(row.q.size()));
        REQUIRE(m.phi_sigma.size() == row.p.size());
        REQUIRE(m.phi_epsilon.size() == row.q.size());
        for (std::size_t k = 0; k < row.p.size(); ++k)
            CHECK(m.phi_sigma.exponent(k) == Approx(row.p[k]).margin(1e-15));
        for (std::size_t k = 0; k < row.q.size(); ++k)
            CHECK(m.phi_epsilon.exponent(k) == Approx(row.q[k]).margin(1e-15));
        CHECK(m.xi == Approx(row.xi).margin(1e-15));
        CHECK(m.lambda_order.has_value() == row.lambda_order.has_value());
        if (row.lambda_order) CHECK(*m.lambda_order == Approx(*row.lambda_order).margin(1e-15));
        CHECK(m.kappa_order.has_value() == row.kappa_order.has_value());
        if (row.kappa_order) CHECK(*m.kappa_order == Approx(*row.kappa_order).margin(1e-15));
    }
}

TEST_CASE("model code strings round-trip") {
    for (ModelCode c : kAllModelCodes) CHECK(model_code_from_string(to_string(c)) == c);
    CHECK_THROWS_AS(model_code_from_string("ID-ID"), Error);
}

TEST_CASE("build_model rejects malformed input with the right error codes") {
    const auto none = std::optional<double>{};

    SECTION("missing order") {
        try {
            build_model(ModelCode::ID_ID, ord(0.4, none, none, 0.2, none, none), {1, 1}, {1, 1});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MissingOrder);
        }
    }
    SECTION("order outside [0,1]") {
        try {
            build_model(ModelCode::ID_ID, ord(1.4, 0.3, none, 0.2, none, none), {1, 1}, {1, 1});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ExponentOutOfRange);
        }
    }
    SECTION("non-positive coefficient") {
        try {
            build_model(ModelCode::ID_ID, ord(0.4, 0.3, none, 0.2, none, none), {1, -1}, {1, 1});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonPositiveCoefficient);
        }
    }
    SECTION("wrong coefficient count") {
        try {
            build_model(ModelCode::ID_ID, ord(0.4, 0.3, none, 0.2, none, none), {1, 1, 1}, {1, 1});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonPositiveCoefficient);
        }
    }
    SECTION("combined exponent hits the upper edge") {
        try {
            build_model(ModelCode::ID_ID, ord(1.0, 1.0, none, 0.2, none, none), {1, 1}, {1, 1});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ExponentOutOfRange);
        }
    }
    SECTION("degenerate exponent (duplicate 0)") {
        // nu == mu collapses the middle strain exponent onto the constant
        try {
            build_model(ModelCode::ID_DDDp, ord(0.3, 0.2, none, 0.3, 0.3, none), {1, 1}, {1, 1, 1});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ExponentOutOfRange);
        }
    }
    SECTION("xi is recorded, not policed") {
        // xi outside (0, 1) is an inequality matter for the dissipativity
        // checks, not a structural defect: the catalog must still build the
        // model so the violation can be reported with both sides.
        const ModelSpec zero = build_model(ModelCode::ID_ID, ord(0.3, 0.3, none, 0.3, none, none),
                                           {1, 1}, {1, 1});
        CHECK(zero.xi == 0.0);
        const ModelSpec negative = build_model(
            ModelCode::ID_ID, ord(0.3, 0.4, none, 0.35, none, none), {1, 1}, {1, 1});
        CHECK_THAT(negative.xi, Catch::Matchers::WithinAbs(-0.05, 1e-15));
    }
}

TEST_CASE("reference three-term model: transform values at s = 1") {
    const ModelSpec m = case1();
    CHECK(m.xi == Approx(0.95));
    CHECK(m.phi_sigma.top_exponent() == Approx(1.8));
    CHECK(m.phi_epsilon.top_exponent() == Approx(0.9));

    // at s = 1 the pure power drops out: ratio of coefficient sums
    const auto sr = laplace_relaxation(m, {1.0, 0.0});
    CHECK(sr.real() == Approx(1.65 / 2.0).epsilon(1e-14));  // 0.825
    CHECK(sr.imag() == Approx(0.0).margin(1e-14));
    const auto cr = laplace_creep(m, {1.0, 0.0});
    CHECK(cr.real() == Approx(2.0 / 1.65).epsilon(1e-14));  // 1.2121...
    CHECK(cr.real() == Approx(1.2121212121212122).epsilon(1e-13));
}

TEST_CASE("transform reciprocity: relaxation times creep equals 1/s^2") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> cdist(0.2, 4.0);
    for (const CatalogRow& row : catalog_rows()) {
        std::vector<double> a, b;
        for (std::size_t k = 0; k < row.p.size(); ++k) a.push_back(cdist(rng));
        for (std::size_t k = 0; k < row.q.size(); ++k) b.push_back(cdist(rng));
        const ModelSpec m = build_model(row.code, row.orders, a, b);
        for (const std::complex<double> s :
             {std::complex<double>{0.7, 1.3}, std::complex<double>{-0.4, 2.0}, std::complex<double>{3.0, 0.5}}) {
            const auto prod = laplace_relaxation(m, s) * laplace_creep(m, s) * s * s;
            INFO("model " << to_string(row.code) << " s=(" << s.real() << "," << s.imag() << ")");
            CHECK(prod.real() == Approx(1.0).epsilon(1e-12));
            CHECK(prod.imag() == Approx(0.0).margin(1e-12));
        }
    }
}

TEST_CASE("evaluating on top of a transfer-function pole is flagged") {
    // alpha + beta = 1 puts an exact zero of phi_sigma at s = -1
    const ModelSpec m = build_model(ModelCode::ID_ID, ord(0.5, 0.5, {}, 0.2, {}, {}), {1.0, 1.0}, {1.0, 2.0});
    try {
        laplace_relaxation(m, std::complex<double>(-1.0, 0.0));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PoleHit);
    }
    // creep side is clean there
    CHECK_NOTHROW(laplace_creep(m, std::complex<double>(-0.4, 0.0)));
    CHECK_THROWS_AS(laplace_relaxation(m, std::complex<double>(0.0, 0.0)), Error);
}

TEST_CASE("JSON descriptor parses, validates, and round-trips") {
    const std::string text = R"({
        "code": "I+ID.ID",
        "orders": {"alpha": 0.35, "beta": 0.55, "nu": 0.4},
        "a": [0.05, 1.5, 0.45],
        "b": [0.7, 0.95]
    })";
    const ModelSpec m = model_from_json_text(text);
    CHECK(m.code == ModelCode::IpID_ID);
    CHECK(m.xi == Approx(0.95));
    CHECK(m.phi_sigma.coeff(1) == Approx(1.5));

    const ModelSpec again = model_from_json(model_to_json(m));
    CHECK(again.xi == Approx(m.xi));
    CHECK(again.phi_epsilon.coeff(1) == Approx(0.95));

    SECTION("parse failures carry ParseError") {
        try {
            model_from_json_text("not json at all {");
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
        try {
            model_from_json_text(R"({"orders": {}, "a": [1], "b": [1]})");
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
        try {
            model_from_json_text(R"({"code": "XX.YY", "a": [1], "b": [1]})");
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
    }
    SECTION("structurally invalid content surfaces build_model errors") {
        try {
            model_from_json_text(R"({"code": "ID.ID", "orders": {"alpha": 0.4, "beta": 0.3}, "a": [1,1], "b": [1,1]})");
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MissingOrder);
        }
    }
}
