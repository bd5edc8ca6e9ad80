/* The public header must compile as C and the library must link from C. */
#include <stdio.h>
#include <string.h>

#include "liesym/liesym.h"

int main(void) {
  ls_pde* p = NULL;
  char* out = NULL;
  int dim = 0;
  ls_algebra* g = NULL;
  if (ls_pde_born_infeld(&p) != LS_OK) return 1;
  if (ls_symmetries(p, 1, "basis", &out) != LS_OK) return 2;
  if (strstr(out, "\"dimension\": 7") == NULL) return 3;
  ls_string_free(out);
  ls_pde_free(p);
  if (ls_algebra_born_infeld(&g) != LS_OK) return 4;
  dim = ls_algebra_dim(g);
  ls_algebra_free(g);
  if (dim != 7) return 5;
  printf("c api ok\n");
  return 0;
}
