#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "stepltl/step_term.hpp"

using namespace stepltl;

TEST_CASE("terms collect coefficients") {
    StepTerm t = StepTerm::of_var("k1") + StepTerm::of_var("k2") + StepTerm::of_var("k1");
    CHECK(t.coeff("k1") == 2);
    CHECK(t.coeff("k2") == 1);
    CHECK(t.constant == 0);
}

TEST_CASE("scaling distributes") {
    StepTerm t = (StepTerm::of_var("k1") + 3).scaled(2);
    CHECK(t.coeff("k1") == 2);
    CHECK(t.constant == 6);
}

TEST_CASE("additive identity") {
    StepTerm t = StepTerm::of_constant(0) + StepTerm::of_var("k");
    CHECK(t == StepTerm::of_var("k"));
}

TEST_CASE("normalize_term drops zero coefficients and is idempotent") {
    StepTerm raw;
    raw.constant = 5;
    raw.coeffs["a"] = 0;
    raw.coeffs["b"] = 2;
    StepTerm n = normalize_term(raw);
    CHECK(n.coeffs.size() == 1);
    CHECK(n.coeff("b") == 2);
    CHECK(normalize_term(n) == n);
}

TEST_CASE("addition is commutative and associative after normalization") {
    std::mt19937_64 rng(7);
    auto random_term = [&rng]() {
        StepTerm t;
        t.constant = rng() % 5;
        const char* names[] = {"a", "b", "c"};
        for (const char* n : names)
            if (rng() % 2) t.add_var(n, 1 + rng() % 3);
        return t;
    };
    for (int iter = 0; iter < 200; ++iter) {
        StepTerm t1 = random_term(), t2 = random_term(), t3 = random_term();
        CHECK(normalize_term(t1 + t2) == normalize_term(t2 + t1));
        CHECK(normalize_term((t1 + t2) + t3) == normalize_term(t1 + (t2 + t3)));
        CHECK(normalize_term((t1 + t2).scaled(3)) ==
              normalize_term(t1.scaled(3) + t2.scaled(3)));
    }
}

TEST_CASE("substitution multiplies through") {
    // k := 5 in 2*k + 1
    StepTerm t = StepTerm::of_var("k").scaled(2) + 1;
    StepTerm r = t.substituted("k", StepTerm::of_constant(5));
    CHECK(r.is_constant());
    CHECK(r.constant == 11);

    // k2 := k + 1 in k1 + k2
    StepTerm u = StepTerm::of_var("k1") + StepTerm::of_var("k2");
    StepTerm s = u.substituted("k2", StepTerm::of_var("k") + 1);
    CHECK(s.coeff("k1") == 1);
    CHECK(s.coeff("k") == 1);
    CHECK(s.constant == 1);
}

TEST_CASE("canonical rendering") {
    StepTerm t;
    t.add_var("k1", 2);
    t.add_var("k2", 1);
    t.constant = 3;
    CHECK(t.to_string() == "2*k1 + k2 + 3");
    CHECK(StepTerm::of_constant(0).to_string() == "0");
    CHECK(StepTerm::of_var("k").to_string() == "k");
}
