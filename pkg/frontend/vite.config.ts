import { defineConfig } from 'vitest/config';

export default defineConfig({
  build: {
    outDir: 'dist',
    sourcemap: false,
  },
  server: {
    proxy: {
      // Dev convenience: run `genderwords serve` on 8000 and `vite` side by side.
      '/api': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'node',
    include: ['tests/**/*.test.ts'],
    globalSetup: ['tests/global_setup.ts'],
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
