/* Exercises the C API from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "funkgeo/funkgeo.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static void test_root_system(void) {
  fg_root_system* rs = NULL;
  EXPECT(fg_root_system_create("F4", 4, &rs) == FG_OK);
  EXPECT(fg_root_system_size(rs) == 48);
  EXPECT(fg_root_system_rank(rs) == 4);

  double x[4];
  double len = 0.0;
  size_t h = fg_root_system_highest(rs);
  EXPECT(fg_root_system_is_positive(rs, h));
  EXPECT(fg_root_system_dual_vector(rs, h, x, 4, &len) == FG_OK);
  EXPECT(fabs(len - 2.0 * 3.14159265358979323846) < 1e-12);

  double y[4];
  for (int i = 0; i < 4; ++i) y[i] = x[i] / 2.0;
  size_t idx[48];
  size_t count = 0;
  EXPECT(fg_root_system_odd_roots(rs, y, 4, 1e-9, idx, 48, &count) == FG_OK);
  EXPECT(count == 14);
  EXPECT(fg_root_system_odd_roots(rs, y, 4, 1e-9, idx, 2, &count) == FG_ERR_BUFFER_TOO_SMALL);
  EXPECT(count == 14);

  double r[2];
  EXPECT(fg_root_system_root(rs, 0, r, 2) == FG_ERR_BUFFER_TOO_SMALL);
  EXPECT(fg_root_system_root(rs, 999, x, 4) == FG_ERR_INVALID_ARGUMENT);

  fg_report* js = NULL;
  EXPECT(fg_root_system_json(rs, &js) == FG_OK);
  EXPECT(strstr(fg_report_json(js), "\"family\":\"F4\"") != NULL);
  fg_report_free(js);
  fg_root_system_free(rs);

  rs = NULL;
  EXPECT(fg_root_system_create("D", 3, &rs) == FG_ERR_INVALID_ARGUMENT);
  EXPECT(rs == NULL);
  EXPECT(strlen(fg_last_error()) > 0);
  EXPECT(fg_root_system_create("Z", 2, &rs) == FG_ERR_INVALID_ARGUMENT);
}

static void test_run(void) {
  fg_params p;
  fg_params_init(&p);
  p.family = "B";
  p.rank = 2;
  fg_report* rep = NULL;
  EXPECT(fg_run("roots", "check", &p, &rep) == FG_OK);
  EXPECT(fg_report_passed(rep) == 1);
  EXPECT(strstr(fg_report_json(rep), "\"passed\":true") != NULL);
  EXPECT(fg_report_csv(rep) == NULL);
  fg_report_free(rep);

  EXPECT(fg_run("roots", "nonsense", &p, &rep) == FG_ERR_INVALID_ARGUMENT);
  EXPECT(rep == NULL);

  fg_params_init(&p);
  p.n = 2;
  p.degree = 9;
  EXPECT(fg_run("cpn", "rank", &p, &rep) == FG_ERR_CAP_EXCEEDED);

  fg_params_init(&p);
  p.lmax = 4;
  p.circles = 60;
  p.want_csv = 1;
  EXPECT(fg_run("sphere", "kernel", &p, &rep) == FG_OK);
  EXPECT(fg_report_csv(rep) != NULL);
  fg_report_free(rep);

  EXPECT(strcmp(fg_status_string(FG_OK), "ok") == 0);
  EXPECT(strcmp(fg_status_string(FG_ERR_NO_PREIMAGE), "no preimage") == 0);
}

static void test_operators(void) {
  fg_operator* op = NULL;
  EXPECT(fg_cp_operator_create(2, 1, 50, 0, 3, &op) == FG_OK);
  EXPECT(fg_operator_rows(op) == 50);
  EXPECT(fg_operator_cols(op) == 9);
  int rank = 0, kernel = -1;
  EXPECT(fg_operator_rank(op, 1e-8, &rank, &kernel) == FG_OK);
  EXPECT(rank == 9);
  EXPECT(kernel == 0);

  double sv[9];
  size_t count = 0;
  EXPECT(fg_operator_singular_values(op, sv, 9, &count) == FG_OK);
  EXPECT(count == 9);
  EXPECT(sv[0] >= sv[8] && sv[8] > 0);

  double x[9], b[50], back[9];
  for (int j = 0; j < 9; ++j) x[j] = 0.1 * (j + 1);
  for (int i = 0; i < 50; ++i) {
    b[i] = 0.0;
    for (int j = 0; j < 9; ++j) b[i] += fg_operator_entry(op, (size_t)i, (size_t)j) * x[j];
  }
  EXPECT(fg_operator_solve(op, b, 50, 0.0, back, 9) == FG_OK);
  for (int j = 0; j < 9; ++j) EXPECT(fabs(back[j] - x[j]) < 1e-9);
  EXPECT(isnan(fg_operator_entry(op, 50, 0)));
  EXPECT(fg_operator_solve(op, b, 49, 0.0, back, 9) == FG_ERR_INVALID_ARGUMENT);
  fg_operator_free(op);

  EXPECT(fg_sphere_operator_create(6, 120, 0, 1, &op) == FG_OK);
  EXPECT(fg_operator_rank(op, 1e-8, &rank, &kernel) == FG_OK);
  EXPECT(rank == 28);
  EXPECT(kernel == 21);
  fg_operator_free(op);

  EXPECT(fg_sphere_operator_create(40, 10, 0, 1, &op) == FG_ERR_INVALID_ARGUMENT);
  EXPECT(fg_cp_operator_create(0, 1, 10, 0, 1, &op) == FG_ERR_UNSUPPORTED_DIMENSION);
}

int main(void) {
  EXPECT(strlen(fg_version()) > 0);
  test_root_system();
  test_run();
  test_operators();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return EXIT_FAILURE;
  }
  puts("C API: all checks passed");
  return EXIT_SUCCESS;
}
