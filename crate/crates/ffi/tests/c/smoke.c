/* Links against the static library and walks the Kashina example. */
#include <stdio.h>
#include <string.h>

#include "dcoset.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,       \
              dc_last_error_message());                                    \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(int argc, char **argv) {
  CHECK(argc == 2);
  DcInstance *inst = NULL;
  CHECK(dc_instance_load(argv[1], &inst) == DC_STATUS_OK);

  size_t rank = 0, violations = 1;
  CHECK(dc_instance_rank(inst, &rank) == DC_STATUS_OK && rank == 7);
  CHECK(dc_instance_validate(inst, &violations) == DC_STATUS_OK && violations == 0);

  DcCosets *dec = NULL;
  CHECK(dc_cosets(inst, "trivial", "K", &dec) == DC_STATUS_OK);
  CHECK(dc_cosets_num_classes(dec) == 4);
  CHECK(dc_cosets_eigenvalue(dec) == 2);
  CHECK(dc_cosets_verified(dec));

  int64_t total = 0;
  for (size_t i = 0; i < dc_cosets_num_classes(dec); i++) {
    int64_t eps = 0;
    CHECK(dc_cosets_class_eps(dec, i, &eps) == DC_STATUS_OK);
    total += eps;
  }
  CHECK(total == 16);

  size_t first = 99;
  char *label = NULL;
  CHECK(dc_cosets_class_member(dec, 0, 0, &first) == DC_STATUS_OK);
  CHECK(dc_instance_label(inst, first, &label) == DC_STATUS_OK);
  CHECK(strcmp(label, "1") == 0);
  dc_string_free(label);

  CHECK(dc_cosets_class_len(dec, 42, &first) == DC_STATUS_OUT_OF_RANGE);
  CHECK(strlen(dc_last_error_message()) > 0);
  CHECK(dc_cosets(inst, "trivial", "Nope", &dec) == DC_STATUS_UNKNOWN_NAME);

  char *json = NULL;
  int32_t code = -1;
  CHECK(dc_check_all_json(inst, &json, &code) == DC_STATUS_OK && code == 0);
  CHECK(strstr(json, "\"schema\": 1") != NULL);
  dc_string_free(json);

  dc_cosets_free(dec);
  dc_instance_free(inst);
  puts("ok");
  return 0;
}
