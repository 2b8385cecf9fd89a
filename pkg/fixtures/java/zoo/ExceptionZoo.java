import java.io.BufferedReader;
import java.io.FileReader;
import java.io.IOException;
import java.util.ArrayList;
import java.util.List;

/** Exception-handling shapes: try/catch/finally, resources, throws, rethrow. */
public class ExceptionZoo {

    String readFirstLine(String path) throws IOException {
        try (BufferedReader reader = new BufferedReader(new FileReader(path))) {
            String line = reader.readLine();
            return line == null ? "" : line;
        }
    }

    int parseOrDefault(String text, int fallback) {
        try {
            return Integer.parseInt(text.trim());
        } catch (NumberFormatException e) {
            return fallback;
        }
    }

    List<String> readAllSafe(String path) {
        List<String> lines = new ArrayList<>();
        BufferedReader reader = null;
        try {
            reader = new BufferedReader(new FileReader(path));
            String line = reader.readLine();
            while (line != null) {
                lines.add(line);
                line = reader.readLine();
            }
        } catch (IOException e) {
            lines.clear();
        } finally {
            closeQuietly(reader);
        }
        return lines;
    }

    void closeQuietly(BufferedReader reader) {
        if (reader == null) {
            return;
        }
        try {
            reader.close();
        } catch (IOException ignored) {
        }
    }

    int riskyChain(String payload) throws IOException {
        int checksum = 0;
        try {
            checksum = payload.length();
            if (checksum == 0) {
                throw new IOException("empty payload");
            }
            checksum = checksum * 31 + payload.charAt(0);
        } catch (RuntimeException e) {
            throw new IOException("bad payload", e);
        } finally {
            checksum = checksum & 0x7fffffff;
        }
        return checksum;
    }

    int multiCatch(String text) {
        int value = -1;
        try {
            value = Integer.parseInt(text);
            value = 100 / value;
        } catch (NumberFormatException | ArithmeticException e) {
            value = 0;
        }
        return value;
    }

    String guardedResource(String first, String second) throws IOException {
        StringBuilder merged = new StringBuilder();
        try (BufferedReader a = new BufferedReader(new FileReader(first));
                BufferedReader b = new BufferedReader(new FileReader(second))) {
            merged.append(a.readLine());
            merged.append('|');
            merged.append(b.readLine());
        }
        return merged.toString();
    }

    void validateState(boolean ready, int pending) {
        assert pending >= 0 : "pending must not be negative";
        if (!ready) {
            throw new IllegalStateException("not ready, pending=" + pending);
        }
    }
}
