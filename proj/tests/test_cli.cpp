#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

int run(const std::string& args, const std::string& stdoutFile = "") {
  std::string cmd = quote(HENON_CLI_PATH) + " " + args;
  if (!stdoutFile.empty())
    cmd += " > " + stdoutFile + " 2>/dev/null";
  else
    cmd += " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string quad_map() { return quote(std::string(HENON_MAPS_DIR) + "/quadratic.json"); }
std::string deg6_map() { return quote(std::string(HENON_MAPS_DIR) + "/degree6.json"); }

// Payload of a square 8-bit PGM (everything after the three header lines).
std::string pgm_payload(const std::string& bytes) {
  std::size_t pos = 0;
  for (int line = 0; line < 3; ++line) pos = bytes.find('\n', pos) + 1;
  return bytes.substr(pos);
}

}  // namespace

TEST_CASE("green grid is byte-identical across thread counts") {
  int rcA = run("green --map " + quad_map() +
                " --res 32 --threads 1 --out tmp_cli_a.csv --pgm tmp_cli_a.pgm");
  int rcB = run("green --map " + quad_map() +
                " --res 32 --threads 8 --out tmp_cli_b.csv --pgm tmp_cli_b.pgm");
  CHECK(rcA == 0);
  CHECK(rcB == 0);
  std::string a = slurp("tmp_cli_a.csv");
  std::string b = slurp("tmp_cli_b.csv");
  REQUIRE(!a.empty());
  CHECK(a == b);
  CHECK(a.rfind("i,j,c1_re,c1_im,c2_re,c2_im,value,error,class\n", 0) == 0);
  CHECK(slurp("tmp_cli_a.pgm") == slurp("tmp_cli_b.pgm"));
  CHECK(slurp("tmp_cli_a.pgm").rfind("P5\n32 32\n255\n", 0) == 0);
}

TEST_CASE("green to stdout, slices, and direction flags") {
  CHECK(run("green --map " + quad_map() + " --res 16 --slice x=2,1 --window -1,1,-1,1",
            "tmp_cli_stdout.csv") == 0);
  std::string text = slurp("tmp_cli_stdout.csv");
  CHECK(text.rfind("i,j,", 0) == 0);

  CHECK(run("green --map " + quad_map() + " --res 16 --slice real --dir bwd",
            "tmp_cli_real.csv") == 0);
  CHECK(run("green --map " + quad_map() + " --res 16 --slice y=0 --dir backward",
            "tmp_cli_y.csv") == 0);
  CHECK(run("green --map " + quad_map() + " --res 16 --slice z=0") == 2);
  CHECK(run("green --map " + quad_map() + " --res 16 --window 1,2,3") == 2);
  CHECK(run("green --map " + quad_map() + " --res notanumber") == 2);
}

TEST_CASE("mask subcommand and sublevel monotonicity in c") {
  for (const char* c : {"0.5", "1", "2"}) {
    int rc = run("mask --map " + quad_map() + " --res 32 --c " + c + " --out tmp_cli_m" +
                 c + ".pgm");
    CHECK(rc == 0);
  }
  std::string m05 = pgm_payload(slurp("tmp_cli_m0.5.pgm"));
  std::string m1 = pgm_payload(slurp("tmp_cli_m1.pgm"));
  std::string m2 = pgm_payload(slurp("tmp_cli_m2.pgm"));
  REQUIRE(m05.size() == 32 * 32);
  REQUIRE(m1.size() == m05.size());
  REQUIRE(m2.size() == m05.size());
  for (std::size_t k = 0; k < m05.size(); ++k) {
    if (static_cast<unsigned char>(m05[k]) == 255) CHECK(static_cast<unsigned char>(m1[k]) == 255);
    if (static_cast<unsigned char>(m1[k]) == 255) CHECK(static_cast<unsigned char>(m2[k]) == 255);
  }
  CHECK(run("mask --map " + quad_map() + " --res 32") == 2);  // --c is required
}

TEST_CASE("bottcher subcommand") {
  CHECK(run("bottcher --map " + quad_map() + " --point 0,0,10,0", "tmp_cli_bot.txt") == 0);
  std::string text = slurp("tmp_cli_bot.txt");
  CHECK(text.find("value: 9.9974978") != std::string::npos);
  CHECK(text.find("tolerance met: yes") != std::string::npos);
  CHECK(text.find("green via product: 2.30233") != std::string::npos);

  CHECK(run("bottcher --map " + quad_map() + " --point 0,0,2,0") == 2);  // outside filtration
  CHECK(run("bottcher --map " + deg6_map() + " --point 0,0,10,0 --dir fwd") == 0);
}

TEST_CASE("commute subcommand") {
  spit("tmp_cli_h2.json",
       "{\"factors\":[{\"b\":1,\"delta\":1,\"p\":\"y^2\"},{\"b\":1,\"delta\":1,\"p\":\"y^2\"}]}");
  CHECK(run("commute --f tmp_cli_h2.json --h " + quad_map(), "tmp_cli_comm.txt") == 0);
  std::string text = slurp("tmp_cli_comm.txt");
  CHECK(text.find("witness: deltaMinus = 1, deltaPlus = 1") != std::string::npos);

  spit("tmp_cli_mirror.json", "{\"factors\":[{\"b\":-1,\"delta\":1,\"p\":\"y^2\"}]}");
  CHECK(run("commute --f tmp_cli_mirror.json --h " + quad_map(), "tmp_cli_comm2.txt") == 1);
  CHECK(slurp("tmp_cli_comm2.txt").find("no diagonal witness") != std::string::npos);
}

TEST_CASE("match subcommand") {
  spit("tmp_cli_h2.json",
       "{\"factors\":[{\"b\":1,\"delta\":1,\"p\":\"y^2\"},{\"b\":1,\"delta\":1,\"p\":\"y^2\"}]}");
  CHECK(run("match --f tmp_cli_h2.json --h " + quad_map(), "tmp_cli_match.txt") == 0);
  std::string text = slurp("tmp_cli_match.txt");
  CHECK(text.find("F^1 = sigma o H^2") != std::string::npos);
  CHECK(text.find("(identity)") != std::string::npos);

  spit("tmp_cli_cubic.json", "{\"factors\":[{\"b\":1,\"delta\":1,\"p\":\"y^3\"}]}");
  CHECK(run("match --f tmp_cli_cubic.json --h " + quad_map(), "tmp_cli_match2.txt") == 1);
  CHECK(slurp("tmp_cli_match2.txt").find("no (m, n) with d_F^m = d_H^n") != std::string::npos);
}

TEST_CASE("onedim subcommand") {
  CHECK(run("onedim --p y^2 --q y^3", "tmp_cli_one.txt") == 0);
  CHECK(slurp("tmp_cli_one.txt").find("(identity)") != std::string::npos);

  CHECK(run("onedim --p \"y^2 - 2\" --q \"y^3 - 3*y\"") == 0);
  CHECK(run("onedim --p y^2 --q \"y^2 + 1\"", "tmp_cli_one2.txt") == 1);
  CHECK(slurp("tmp_cli_one2.txt").find("no unimodular affine conjugacy") != std::string::npos);

  CHECK(run("onedim --p y^2 --point 3", "tmp_cli_one3.txt") == 0);
  CHECK(slurp("tmp_cli_one3.txt").find("value: 1.0986122886681098") != std::string::npos);

  CHECK(run("onedim --p y^2") == 2);       // needs --q or --point
  CHECK(run("onedim --p \"y^-1\"") == 2);  // negative exponent
}

TEST_CASE("witness subcommand") {
  CHECK(run("witness --map " + quad_map() +
            " --samples 10000 --theta-count 16 --max-iter 200 --seed 1",
            "tmp_cli_wit.txt") == 0);
  std::string text = slurp("tmp_cli_wit.txt");
  CHECK(text.find("bounded point: (") != std::string::npos);
  CHECK(text.find("rotated point escapes at iterate ") != std::string::npos);

  CHECK(run("witness --map " + quad_map() + " --theta-count 0") == 2);
}

TEST_CASE("input failures exit with code 2") {
  CHECK(run("green --map tmp_cli_missing.json") == 2);
  spit("tmp_cli_badjson.json", "{\"factors\": [");
  CHECK(run("green --map tmp_cli_badjson.json") == 2);
  spit("tmp_cli_badpoly.json", "{\"factors\":[{\"b\":1,\"delta\":1,\"p\":\"y^\"}]}");
  CHECK(run("green --map tmp_cli_badpoly.json") == 2);
  spit("tmp_cli_badfactor.json", "{\"factors\":[{\"b\":0,\"delta\":1,\"p\":\"y^2\"}]}");
  CHECK(run("green --map tmp_cli_badfactor.json") == 2);
  CHECK(run("") == 2);           // a subcommand is required
  CHECK(run("frobnicate") == 2);  // unknown subcommand
  CHECK(run("--help") == 0);
  CHECK(run("green --help") == 0);
}
