#include "doctest.h"

#include "cohomlab/json_io.hpp"

using namespace cohomlab;

TEST_CASE("parsing group specs") {
  MatGroup g = parse_group_spec(Json::parse(R"({"p": 3, "n": 2, "generators": [[[1, 0], [0, 8]], [[4, 0], [0, 4]], [[1, 6], [3, 1]]]})"));
  CHECK(g.order() == 18);
  CHECK(g == make_example_group(3).group);

  MatGroup trivial = parse_group_spec(Json::parse(R"({"p": 3, "n": 1, "generators": []})"));
  CHECK(trivial.order() == 1);

  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"({"p": 3, "n": 1, "generators": [[[3, 0], [0, 1]]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"({"p": 3, "n": 1, "generators": [[[0, 0], [0, 1]]]})")),
                  NonInvertibleGenerator);
  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"({"p": 4, "n": 1, "generators": []})")), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"({"p": 3, "generators": []})")), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"({"p": 3, "n": 1, "generators": [[1, 0, 0, 1]]})")), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"([1, 2])")), InvalidInput);
  CHECK_THROWS_AS(parse_group_spec(Json::parse(R"({"p": 3, "n": 2, "generators": [[[0, 1], [1, 0]], [[1, 1], [0, 1]]]})"), 100),
                  CapExceeded);
}

TEST_CASE("serializing reports") {
  ExampleGroup eg = make_example_group(3);
  Json r = to_json(h1_loc(eg.group));
  CHECK(r["h1loc"] == Json::array({3}));
  CHECK(r["witnesses"].size() == 1);
  CHECK(r["witnesses"][0].size() == 18);

  Json c = to_json(evaluate_main_theorem_conditions(eg.group));
  CHECK(c["zetaConditionHolds"] == false);
  CHECK(c["hasFixedPointOfExactOrderP"] == true);
  CHECK(c["detImageOrderMod_p"] == 2);
  CHECK(c["stableCyclicOrderP"].size() == 2);
  CHECK(c["stableCyclicOrderP2"].empty());
  CHECK(c["isogenyConditionP3"] == false);

  Json g = to_json(eg.group);
  CHECK(g["order"] == 18);
  CHECK(parse_group_spec(g) == eg.group);

  CHECK(to_json(Mat2(ModulusContext(3, 1), 1, 2, 0, 1)) == Json::parse("[[1, 2], [0, 1]]"));
}

TEST_CASE("serializing verdicts") {
  ExperimentVerdict v;
  v.name = "demo";
  v.parameters["p"] = 3;
  v.checks.push_back({"a, quoted \"value\"", "0", "0", true});
  v.checks.push_back({"plain", "1", "2", false});
  CHECK_FALSE(v.passed());

  Json j = to_json(v);
  CHECK(j["name"] == "demo");
  CHECK(j["passed"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["counterexamples"].empty());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"name", "parameters", "passed", "checks", "counterexamples", "elapsed_ms"});

  CHECK(to_csv(v) ==
        "experiment,description,expected,actual,ok\n"
        "demo,\"a, quoted \"\"value\"\"\",0,0,true\n"
        "demo,plain,1,2,false\n");

  v.checks.pop_back();
  CHECK(v.passed());
  v.counterexamples.push_back({make_example_group(3).group, "reason"});
  CHECK_FALSE(v.passed());
  CHECK(to_json(v)["counterexamples"][0]["reason"] == "reason");
}
