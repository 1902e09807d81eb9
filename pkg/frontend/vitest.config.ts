import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'node',
    include: ['tests/**/*.test.ts'],
    // the e2e file spawns the render service and does real renders
    testTimeout: 120_000,
    hookTimeout: 60_000,
  },
});
