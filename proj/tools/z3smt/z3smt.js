// Reads an SMT-LIB script on stdin, evaluates it with the Z3 wasm build
// and writes the solver output to stdout.
const { init } = require('z3-solver');
const fs = require('fs');

(async () => {
  const { Z3 } = await init();
  const cfg = Z3.mk_config();
  const ctx = Z3.mk_context(cfg);
  const input = fs.readFileSync(0, 'utf8');
  const out = await Z3.eval_smtlib2_string(ctx, input);
  process.stdout.write(out);
  if (!out.endsWith('\n')) process.stdout.write('\n');
  process.exit(0);
})().catch((e) => {
  console.error(String(e && e.message ? e.message : e));
  process.exit(1);
});
