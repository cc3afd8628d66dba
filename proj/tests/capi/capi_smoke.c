/* The header must stay valid C. */
#include <stdio.h>

#include "logerg/logerg.h"

int main(void) {
  logerg_path* w = NULL;
  logerg_path* s = NULL;
  logerg_gbm_params gbm = {0.1, 0.2, 100.0};
  double v[3];
  if (logerg_path_simulate_wiener(1.0, 0.5, 7, &w) != LOGERG_OK) return 1;
  if (logerg_path_simulate_gbm(&gbm, w, &s) != LOGERG_OK) return 1;
  if (logerg_path_copy_values(s, v, 3) != LOGERG_OK) return 1;
  logerg_path_free(s);
  logerg_path_free(w);
  if (v[0] != 100.0) return 1;
  if (logerg_gamma_delta(1.0, 2.0, v) != LOGERG_E_DOMAIN) return 1;
  printf("capi smoke ok\n");
  return 0;
}
