#include <stdio.h>
#include <string.h>

#include "qplab.h"

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);  \
      return 1;                                                   \
    }                                                             \
  } while (0)

int main(void) {
  QplabPoly *g = NULL, *p = NULL, *prod = NULL, *quot = NULL;
  EXPECT(qplab_poly_gaussian_binomial(4, 2, &g) == QPLAB_STATUS_OK);
  EXPECT(qplab_poly_parse("1 + q", &p) == QPLAB_STATUS_OK);
  EXPECT(qplab_poly_mul(g, p, &prod) == QPLAB_STATUS_OK);
  EXPECT(qplab_poly_divide_exact(prod, p, &quot) == QPLAB_STATUS_OK);
  bool same = false;
  EXPECT(qplab_poly_equal(quot, g, &same) == QPLAB_STATUS_OK && same);

  char *s = NULL;
  EXPECT(qplab_poly_to_string(g, &s) == QPLAB_STATUS_OK);
  EXPECT(strcmp(s, "1 + q + 2*q^2 + q^3 + q^4") == 0);
  qplab_string_free(s);

  QplabPoly *bad = NULL;
  EXPECT(qplab_poly_parse("q^^", &bad) == QPLAB_STATUS_PARSE && bad == NULL);
  EXPECT(qplab_last_error_message() != NULL);

  QplabConstraints c = {-1, -1, 14, -1, true};
  uint64_t n = 0;
  EXPECT(qplab_count_partitions(&c, &n) == QPLAB_STATUS_OK && n == 22);

  QplabReport *r = NULL;
  QplabVerdict v = QPLAB_VERDICT_ERROR;
  EXPECT(qplab_verify("T2_1", "bound=3,i=1,j=0", NULL, &r) == QPLAB_STATUS_OK);
  EXPECT(qplab_report_verdict(r, &v) == QPLAB_STATUS_OK && v == QPLAB_VERDICT_PASS);
  qplab_report_free(r);

  qplab_poly_free(g);
  qplab_poly_free(p);
  qplab_poly_free(prod);
  qplab_poly_free(quot);
  printf("ok %s\n", qplab_version());
  return 0;
}
