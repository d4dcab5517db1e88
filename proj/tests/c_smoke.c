/* Copyright 2026 The PLA Toolkit Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <stdio.h>

#include "pla/pla.h"

int main(void) {
  double p = 0.0;
  pla_session* s = NULL;
  if (pla_p_mdlg(5, 0.6, 10, &p, NULL) != PLA_OK || p < 0.8191 || p > 0.8193) {
    fprintf(stderr, "p_mdlg: %s\n", pla_last_error());
    return 1;
  }
  if (pla_session_create(&s) != PLA_OK) return 1;
  if (pla_session_load_config_text(s, "{\"bogus\": 1}") != PLA_ERR_CONFIG) return 1;
  pla_session_destroy(s);
  printf("c smoke ok (%s)\n", pla_version());
  return 0;
}
