package com.example.streams;

import java.io.InputStream;

public class LegacyStreamUtils {

    public String convertInputStream2String(InputStream is) {
        return Util.convert(is);
    }
}
